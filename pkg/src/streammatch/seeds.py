"""Deterministic seed splitting.

Every randomized component takes its own ``random.Random`` built from the
master seed and a label path, so the whole pipeline is a pure function of
(stream bytes, master seed).

Splitting scheme: the child seed for path ``(p1, p2, ...)`` is the first
8 bytes (big endian) of ``sha256("<master>/p1/p2/...")``.  Distinct paths
give independent-looking streams, and the derivation is order-free: it
does not matter in which order children are created.
"""

from __future__ import annotations

import hashlib
import random


def derive_seed(master: int, *path) -> int:
    h = hashlib.sha256()
    h.update(str(master).encode())
    for part in path:
        h.update(b"/")
        h.update(str(part).encode())
    return int.from_bytes(h.digest()[:8], "big")


def spawn_rng(master: int, *path) -> random.Random:
    """A fresh ``random.Random`` for the component named by ``path``."""
    return random.Random(derive_seed(master, *path))
