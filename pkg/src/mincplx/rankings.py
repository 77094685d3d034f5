"""Colexicographic ranking of vertex subsets and the counter-based mix function.

Every r-subset of {0, ..., n-1} gets a unique rank

    rank(w_0 < w_1 < ... < w_{r-1}) = sum_j C(w_j, j+1),

the standard combinatorial number system (colex order).  Ranks are used as
counters for the per-face random draws and as bit positions in the packed
face storage of :class:`mincplx.complex_core.KComplex`.

The mix function is the splitmix64 finalizer.  It is implemented twice, once
on Python ints and once on uint64 numpy arrays, and both variants agree
bit-for-bit.
"""

from __future__ import annotations

import math

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_MIX_MUL1 = 0xBF58476D1CE4E5B9
_MIX_MUL2 = 0x94D049BB133111EB


def mix64(x: int) -> int:
    """splitmix64 finalizer on a 64-bit integer (Python int version)."""
    x &= MASK64
    x ^= x >> 30
    x = (x * _MIX_MUL1) & MASK64
    x ^= x >> 27
    x = (x * _MIX_MUL2) & MASK64
    x ^= x >> 31
    return x


def mix64_array(x: np.ndarray) -> np.ndarray:
    """splitmix64 finalizer applied elementwise to a uint64 array."""
    x = x.astype(np.uint64, copy=True)
    with np.errstate(over="ignore"):
        x ^= x >> np.uint64(30)
        x *= np.uint64(_MIX_MUL1)
        x ^= x >> np.uint64(27)
        x *= np.uint64(_MIX_MUL2)
        x ^= x >> np.uint64(31)
    return x


def counter_uniform_u64(seed: int, counters: np.ndarray) -> np.ndarray:
    """Per-counter 64-bit draws: u_i = mix64(mix64(seed) ^ (c_i + 1) * GOLDEN).

    Pure function of (seed, counter), so draws are order-independent and two
    complexes sampled from the same seed share per-face uniforms (the basis
    of the coupled sweeps).
    """
    base = np.uint64(mix64(seed))
    c = counters.astype(np.uint64, copy=True)
    with np.errstate(over="ignore"):
        c += np.uint64(1)
        c *= np.uint64(GOLDEN)
        c ^= base
    return mix64_array(c)


def counter_uniform_u64_scalar(seed: int, counter: int) -> int:
    """Scalar twin of :func:`counter_uniform_u64`."""
    c = ((counter + 1) * GOLDEN) & MASK64
    return mix64(c ^ mix64(seed))


def binom_table(n: int, r: int) -> np.ndarray:
    """Table ``t[j, v] = C(v, j)`` for ``0 <= j <= r`` and ``0 <= v <= n`` (int64)."""
    t = np.zeros((r + 1, n + 1), dtype=np.int64)
    t[0, :] = 1
    for j in range(1, r + 1):
        for v in range(1, n + 1):
            t[j, v] = t[j, v - 1] + t[j - 1, v - 1]
    return t


def rank_subset(vertices) -> int:
    """Colex rank of a strictly increasing tuple of 0-based vertices."""
    return sum(math.comb(v, j + 1) for j, v in enumerate(vertices))


def unrank_subset(rank: int, r: int) -> tuple:
    """Inverse of :func:`rank_subset` for r-subsets."""
    out = []
    for j in range(r, 0, -1):
        v = j - 1
        while math.comb(v + 1, j) <= rank:
            v += 1
        out.append(v)
        rank -= math.comb(v, j)
    return tuple(reversed(out))


def rank_rows(rows: np.ndarray, table: np.ndarray) -> np.ndarray:
    """Colex ranks of many subsets at once.

    ``rows`` has shape (m, r) with strictly increasing 0-based vertices per
    row; ``table`` comes from :func:`binom_table` with second dimension large
    enough for the vertex values.
    """
    m, r = rows.shape
    ranks = np.zeros(m, dtype=np.int64)
    for j in range(r):
        ranks += table[j + 1, rows[:, j]]
    return ranks


def unrank_rows(ranks: np.ndarray, r: int, table: np.ndarray) -> np.ndarray:
    """Vectorized inverse of :func:`rank_rows`: ranks -> (m, r) sorted rows."""
    ranks = ranks.astype(np.int64, copy=True)
    m = ranks.shape[0]
    out = np.zeros((m, r), dtype=np.int64)
    for j in range(r, 0, -1):
        # largest v with C(v, j) <= remaining rank
        v = np.searchsorted(table[j], ranks, side="right") - 1
        out[:, j - 1] = v
        ranks -= table[j, v]
    return out
