"""Deterministic seeded samplers for random complexes X^k(n,p) and random
graphs G(n,p).

Each potential face gets its own uniform draw, computed as a pure function
of (seed, colex rank of the face) via the splitmix64-based counter mix in
:mod:`mincplx.rankings`.  Sampling is therefore independent of iteration
order, parallelizes trivially, and complexes sampled with the same seed at
two probabilities p <= p' are nested (the coupling used by the threshold
sweeps).

In c-mode the face probability is computed as ``p = exp(ln(c/n) / k)`` in
double precision; a face with draw u in [0,1) is included iff u < p, which
is evaluated as an integer comparison against ``ceil(p * 2^64)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .complex_core import BITSET_MAX_BITS, KComplex
from .link_graphs import Graph
from .rankings import binom_table, counter_uniform_u64, mix64, unrank_rows

_CHUNK = 1 << 22
_COMPLEX_SALT = 0x6B636F6D706C6578  # domain separation: complex vs graph draws
_GRAPH_SALT = 0x6772617068313131
_TRIAL_SALT = 0x747269616C730001

try:  # fast bit-filling kernel; the numpy chunk loop below is the reference
    from ._fill_bits import fill_bits as _fill_bits_fast
except ImportError:  # pragma: no cover - numba is normally available
    _fill_bits_fast = None


@dataclass(frozen=True)
class RandomParams:
    """Parameters of one X^k(n,p) sample.

    Either give ``p`` directly or give ``c`` to use the threshold scaling
    p = (c/n)^(1/k).
    """

    n: int
    k: int
    seed: int
    p: Optional[float] = None
    c: Optional[float] = None

    def __post_init__(self):
        if self.n < self.k + 1:
            raise ValueError(f"need n >= k+1, got n={self.n}, k={self.k}")
        if (self.p is None) == (self.c is None):
            raise ValueError("exactly one of p and c must be given")
        if self.p is not None and not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")
        if self.c is not None and self.c < 0:
            raise ValueError(f"c must be >= 0, got {self.c}")

    @property
    def probability(self) -> float:
        if self.p is not None:
            return self.p
        if self.c == 0.0:
            return 0.0
        return min(1.0, math.exp(math.log(self.c / self.n) / self.k))


def p_from_c(c: float, n: int, k: int) -> float:
    """Threshold-scaled probability (c/n)^(1/k), clamped to [0, 1]."""
    if c == 0.0:
        return 0.0
    return min(1.0, math.exp(math.log(c / n) / k))


def _threshold_u64(p: float) -> int:
    # u/2^64 < p  <=>  u < ceil(p * 2^64), exact for p in {0, 1}
    if p <= 0.0:
        return 0
    if p >= 1.0:
        return 1 << 64
    return math.ceil(p * 2.0 ** 64)


def _sample_bits(seed: int, salt: int, nranks: int, p: float) -> np.ndarray:
    """Packed indicator bits for ranks 0..nranks-1 at inclusion probability p."""
    thr = _threshold_u64(p)
    out = np.zeros((nranks + 7) // 8, dtype=np.uint8)
    if thr == 0:
        return out
    mixed_seed = mix64(seed ^ salt)
    if thr == 1 << 64:
        full, rem = divmod(nranks, 8)
        out[:full] = 0xFF
        if rem:
            out[full] = (1 << rem) - 1
        return out
    if _fill_bits_fast is not None:
        _fill_bits_fast(out, np.uint64(mixed_seed), np.int64(nranks), np.uint64(thr))
        return out
    thr64 = np.uint64(thr)
    for lo in range(0, nranks, _CHUNK):
        hi = min(lo + _CHUNK, nranks)
        u = counter_uniform_u64(mixed_seed, np.arange(lo, hi, dtype=np.uint64))
        present = u < thr64
        # pad the final partial chunk to a byte boundary
        if (hi - lo) % 8:
            present = np.concatenate([present, np.zeros(8 - (hi - lo) % 8, dtype=bool)])
        out[lo // 8:(hi + 7) // 8] = np.packbits(present, bitorder="little")
    return out


def face_uniform(seed: int, ranks: np.ndarray) -> np.ndarray:
    """The per-face uniforms in [0, 1) used by :func:`sample_complex`."""
    u = counter_uniform_u64(mix64(seed ^ _COMPLEX_SALT), ranks.astype(np.uint64))
    return (u >> np.uint64(11)).astype(np.float64) / float(1 << 53)


def sample_complex(params: RandomParams) -> KComplex:
    """Sample X^k(n,p): every (k+1)-subset of [n] independently with prob. p."""
    n, k = params.n, params.k
    nfaces = math.comb(n, k + 1)
    p = params.probability
    if nfaces <= BITSET_MAX_BITS:
        bits = _sample_bits(params.seed, _COMPLEX_SALT, nfaces, p)
        return KComplex.from_bits(n, k, bits)
    # huge face universe: collect present ranks chunk by chunk
    thr = np.uint64(_threshold_u64(p))
    mixed = mix64(params.seed ^ _COMPLEX_SALT)
    ranks = []
    for lo in range(0, nfaces, _CHUNK):
        hi = min(lo + _CHUNK, nfaces)
        u = counter_uniform_u64(mixed, np.arange(lo, hi, dtype=np.uint64))
        ranks.extend(int(r) for r in np.nonzero(u < thr)[0] + lo)
    return KComplex.from_ranks(n, k, ranks)


def sample_graph(n: int, p: float, seed: int) -> Graph:
    """Sample G(n,p) on vertex set [n] with the same counter-based scheme."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    npairs = math.comb(n, 2)
    thr = np.uint64(min(_threshold_u64(p), (1 << 64) - 1)) if p < 1.0 else None
    mixed = mix64(seed ^ _GRAPH_SALT)
    table = binom_table(n, 2)
    edges = []
    for lo in range(0, npairs, _CHUNK):
        hi = min(lo + _CHUNK, npairs)
        if p >= 1.0:
            present_ranks = np.arange(lo, hi, dtype=np.int64)
        elif p <= 0.0:
            continue
        else:
            u = counter_uniform_u64(mixed, np.arange(lo, hi, dtype=np.uint64))
            present_ranks = np.nonzero(u < thr)[0].astype(np.int64) + lo
        if len(present_ranks):
            rows = unrank_rows(present_ranks, 2, table)
            edges.extend((int(a) + 1, int(b) + 1) for a, b in rows)
    return Graph(frozenset(range(1, n + 1)), frozenset(edges))


def derive_trial_seed(base_seed: int, trial_index: int) -> int:
    """Mix a base seed and a trial index into an independent 64-bit seed."""
    if trial_index < 0:
        raise ValueError("trial_index must be >= 0")
    return mix64(mix64(base_seed ^ _TRIAL_SALT) ^ ((trial_index + 1) * 0x9E3779B97F4A7C15))
