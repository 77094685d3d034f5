"""Numba kernel producing the packed per-face indicator bits.

Bit-for-bit identical to the chunked numpy path in
:mod:`mincplx.random_gen`; the numpy path remains the executable reference
and the test suite asserts equality of the two.
"""

import numba as nb
import numpy as np

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MUL1 = np.uint64(0xBF58476D1CE4E5B9)
_MUL2 = np.uint64(0x94D049BB133111EB)


@nb.njit(nb.uint64(nb.uint64), inline="always")
def _mix64(x):
    x ^= x >> np.uint64(30)
    x *= _MUL1
    x ^= x >> np.uint64(27)
    x *= _MUL2
    x ^= x >> np.uint64(31)
    return x


@nb.njit(nb.void(nb.uint8[::1], nb.uint64, nb.int64, nb.uint64), parallel=True)
def fill_bits(out, mixed_seed, nranks, thr):
    base = _mix64(mixed_seed)
    nbytes = out.shape[0]
    for b in nb.prange(nbytes):
        lo = b * 8
        m = nranks - lo
        if m > 8:
            m = 8
        acc = np.uint8(0)
        for j in range(m):
            c = (np.uint64(lo + j) + np.uint64(1)) * _GOLDEN
            u = _mix64(c ^ base)
            if u < thr:
                acc |= np.uint8(1) << np.uint8(j)
        out[b] = acc
