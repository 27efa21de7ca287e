import random

import pytest

from streammatch.gf2 import clmul, gf_mul, is_irreducible, reduction_poly


def test_clmul_hand_values():
    # (x+1)(x+1) = x^2+1 over GF(2)
    assert clmul(0b11, 0b11) == 0b101
    assert clmul(0b10, 0b10) == 0b100
    assert clmul(5, 0) == 0
    assert clmul(1, 7) == 7


def test_known_reduction_polys():
    assert reduction_poly(2) == 0b111        # x^2+x+1 is the only degree-2 irreducible
    assert reduction_poly(3) == 0b1011       # x^3+x+1 comes before x^3+x^2+1
    assert is_irreducible(0b1011, 3)
    assert not is_irreducible(0b101, 2)      # x^2+1 = (x+1)^2


@pytest.mark.parametrize("w", [1, 2, 3, 4, 8, 12, 16, 32, 61, 64])
def test_reduction_polys_are_irreducible(w):
    f = reduction_poly(w)
    assert f.bit_length() == w + 1
    assert is_irreducible(f, w)


@pytest.mark.parametrize("w", [2, 4, 8, 12])
def test_field_axioms_random_triples(w):
    # distributivity and associativity, bit-exact, 10^4 triples per width
    rng = random.Random(w)
    mask = (1 << w) - 1
    for _ in range(10_000):
        a, b, c = (rng.getrandbits(w) for _ in range(3))
        assert gf_mul(a, b ^ c, w) == gf_mul(a, b, w) ^ gf_mul(a, c, w)
        assert gf_mul(gf_mul(a, b, w), c, w) == gf_mul(a, gf_mul(b, c, w), w)
        assert gf_mul(a, b, w) == gf_mul(b, a, w)
        assert gf_mul(a, 1, w) == a
        assert gf_mul(a, b, w) <= mask


def test_products_stay_in_field():
    for w in (3, 5, 7):
        for a in range(1 << w):
            for b in range(1 << w):
                assert gf_mul(a, b, w) < (1 << w)


def test_nonzero_products_nonzero():
    # a field has no zero divisors
    w = 4
    for a in range(1, 16):
        for b in range(1, 16):
            assert gf_mul(a, b, w) != 0
