"""Exact maximum-weight k-matching on small edge sets.

``solve_exact`` is branch-and-bound over edges in decreasing key order
(the key (weight, u, v) is a total order on the edges of a simple graph)
with the admissible bound "current weight + sum of the next (k - chosen)
weights".  ``enumerate_oracle`` is the independent brute force used to
verify it.  Both visit candidate matchings in the same position-lex order
over key-descending edges and keep the first strict improvement, which
makes ties deterministic: among optimal k-matchings the one whose sorted
key sequence is lexicographically largest wins.

These are kernel-extraction routines: inputs are a few thousand edges at
most, so worst-case exponential corners of branch-and-bound do not matter
here, and correctness is pinned by oracle equivalence.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .errors import ParameterError

Edge = tuple  # (u, v, weight) with u < v


def edge_key(edge: Edge):
    u, v, w = edge
    return (w, u, v)


@dataclass(frozen=True)
class Matching:
    """A set of pairwise vertex-disjoint edges, stored in key-descending order."""

    edges: tuple[Edge, ...]

    @property
    def weight(self):
        return sum(e[2] for e in self.edges)

    def __len__(self):
        return len(self.edges)


def is_valid_matching(m: Matching, k: int, graph_edges: Iterable[Edge] | None = None) -> bool:
    """Independent validator: cardinality, disjointness, optional membership."""
    if len(m.edges) != k:
        return False
    seen: set[int] = set()
    for u, v, _w in m.edges:
        if u in seen or v in seen or u == v:
            return False
        seen.add(u)
        seen.add(v)
    if graph_edges is not None and not set(m.edges) <= set(graph_edges):
        return False
    return True


def _sorted_desc(edges: Sequence[Edge]) -> list[Edge]:
    return sorted(edges, key=edge_key, reverse=True)


def solve_exact(edges: Sequence[Edge], k: int) -> Matching | None:
    """A maximum-weight matching of cardinality exactly k, or None.

    Deterministic output; see the module docstring for the tie rule.
    """
    if k < 1:
        raise ParameterError(f"k must be >= 1, got {k}")
    es = _sorted_desc(edges)
    m = len(es)
    if m < k:
        return None

    # prefix[i] = sum of weights of es[:i]; since key-descending order is
    # weight-descending, the heaviest c edges of es[i:] are es[i:i+c].
    prefix = [0] * (m + 1)
    for i, e in enumerate(es):
        prefix[i + 1] = prefix[i] + e[2]

    best: list[Edge] | None = None
    best_w = None
    chosen: list[Edge] = []
    used: set[int] = set()

    def dfs(start: int, cur_w):
        nonlocal best, best_w
        need = k - len(chosen)
        if need == 0:
            if best_w is None or cur_w > best_w:
                best = list(chosen)
                best_w = cur_w
            return
        last = m - need
        for i in range(start, last + 1):
            if best_w is not None and cur_w + prefix[i + need] - prefix[i] <= best_w:
                return  # bound only shrinks as i grows
            u, v, w = es[i]
            if u in used or v in used:
                continue
            chosen.append(es[i])
            used.add(u)
            used.add(v)
            dfs(i + 1, cur_w + w)
            used.discard(u)
            used.discard(v)
            chosen.pop()

    dfs(0, 0)
    return Matching(tuple(best)) if best is not None else None


def enumerate_oracle(edges: Sequence[Edge], k: int) -> Matching | None:
    """Exhaustive maximum over all vertex-disjoint k-subsets of edges.

    Caller-bounded: intended for instances small enough to enumerate all
    k-subsets.
    """
    if k < 1:
        raise ParameterError(f"k must be >= 1, got {k}")
    es = _sorted_desc(edges)
    best = None
    best_w = None
    for combo in itertools.combinations(es, k):
        seen: set[int] = set()
        ok = True
        for u, v, _w in combo:
            if u in seen or v in seen:
                ok = False
                break
            seen.add(u)
            seen.add(v)
        if not ok:
            continue
        w = sum(e[2] for e in combo)
        if best_w is None or w > best_w:
            best = combo
            best_w = w
    return Matching(best) if best is not None else None


def max_nice_matching(edges: Sequence[Edge], part_of: Callable[[int], int], k: int) -> Matching | None:
    """Exhaustive maximum over k-matchings whose 2k endpoints occupy 2k distinct parts."""
    if k < 1:
        raise ParameterError(f"k must be >= 1, got {k}")
    es = _sorted_desc(edges)
    best = None
    best_w = None
    for combo in itertools.combinations(es, k):
        seen: set[int] = set()
        parts: set[int] = set()
        ok = True
        for u, v, _w in combo:
            pu, pv = part_of(u), part_of(v)
            if u in seen or v in seen or pu == pv or pu in parts or pv in parts:
                ok = False
                break
            seen.add(u)
            seen.add(v)
            parts.add(pu)
            parts.add(pv)
        if not ok:
            continue
        w = sum(e[2] for e in combo)
        if best_w is None or w > best_w:
            best = combo
            best_w = w
    return Matching(best) if best is not None else None
