"""Exact universal and t-wise independent hash families.

Two constructions, both over finite fields:

* ``UniversalHash`` -- the classic ``((a*x + b) mod p) mod r`` family with
  p the smallest prime at least the domain size.  For any two distinct
  keys the number of colliding members is at most |family|/r.

* ``KWiseHash`` -- a random polynomial over GF(2^w) whose degree is one
  less than the independence order, evaluated by Horner's rule, with the
  low ``out_bits`` bits of the field element as output.  Taking low-order
  bits of a uniform GF(2^w) element preserves exact t-wise independence,
  unlike truncating a prime-field value mod a power of two.

Hash objects are immutable after drawing and safe to share between
threads; the caller owns the rng used for drawing.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import DomainError, ParameterError
from .gf2 import MAX_WIDTH, gf_mul

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime >= n."""
    c = max(n, 2)
    while not is_prime(c):
        c += 1
    return c


@dataclass(frozen=True)
class UniversalHash:
    """One member h(x) = ((a*x + b) mod p) mod r of the universal family."""

    p: int
    a: int
    b: int
    r: int

    def __post_init__(self):
        if not (is_prime(self.p) and 1 <= self.a <= self.p - 1 and 0 <= self.b <= self.p - 1):
            raise ParameterError(f"invalid universal hash parameters {self}")
        if self.r < 1:
            raise ParameterError("output range must be positive")

    def __call__(self, x: int) -> int:
        if not 0 <= x < self.p:
            raise DomainError(f"key {x} outside [0, {self.p})")
        return ((self.a * x + self.b) % self.p) % self.r


def universal_draw(domain_size: int, r: int, rng: random.Random) -> UniversalHash:
    """Draw uniformly from the universal family for the given domain and range.

    Uses p = smallest prime >= domain_size, a uniform in [1, p-1] and
    b uniform in [0, p-1].
    """
    if domain_size < 1 or r < 1:
        raise ParameterError("domain_size and r must be >= 1")
    p = next_prime(domain_size)
    return UniversalHash(p=p, a=rng.randrange(1, p), b=rng.randrange(p), r=r)


@dataclass(frozen=True)
class KWiseHash:
    """A uniformly random polynomial a_0 + a_1 x + ... over GF(2^w).

    ``independence`` is both the independence order and the coefficient
    count.  Maps ``in_bits``-bit strings to ``out_bits``-bit strings;
    storage is exactly ``independence`` field elements.
    """

    width: int
    independence: int
    coeffs: tuple[int, ...]
    in_bits: int
    out_bits: int

    def __post_init__(self):
        if len(self.coeffs) != self.independence:
            raise ParameterError("coefficient count must equal independence")
        if not 1 <= self.out_bits <= self.width:
            raise ParameterError("out_bits must lie in [1, width]")

    def __call__(self, x: int) -> int:
        if not 0 <= x < (1 << self.in_bits):
            raise DomainError(f"key {x} is not a {self.in_bits}-bit string")
        acc = 0
        w = self.width
        for c in reversed(self.coeffs):
            acc = gf_mul(acc, x, w) ^ c
        return acc & ((1 << self.out_bits) - 1)


def kwise_draw(independence: int, in_bits: int, out_bits: int, rng: random.Random) -> KWiseHash:
    """Draw the polynomial's coefficients independently and uniformly from GF(2^w).

    The field width is w = max(in_bits, out_bits).
    """
    if independence < 1 or in_bits < 1 or out_bits < 1:
        raise ParameterError("independence, in_bits and out_bits must be >= 1")
    width = max(in_bits, out_bits)
    if width > MAX_WIDTH:
        raise ParameterError(f"field width {width} exceeds supported maximum {MAX_WIDTH}")
    coeffs = tuple(rng.getrandbits(width) for _ in range(independence))
    return KWiseHash(width=width, independence=independence, coeffs=coeffs, in_bits=in_bits, out_bits=out_bits)
