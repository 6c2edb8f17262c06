"""Word-parallel autocorrelation of an indicator bit-vector.

Bit ``a - 1`` of the packed vector is set for every element ``a``.  For each
shift ``x`` the kernel ANDs the vector with its copy shifted up by ``x`` and
sums the popcounts, touching only the words of the unshifted vector that are
non-zero (zero words contribute nothing to the AND).
"""
import numba
import numpy as np

# the system TBB is too old for numba; prefer OpenMP, then the builtin workqueue
numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)


@numba.njit(cache=True, inline="always")
def _popcount64(v):
    v = v - ((v >> np.uint64(1)) & _M1)
    v = (v & _M2) + ((v >> np.uint64(2)) & _M2)
    v = (v + (v >> np.uint64(4))) & _M4
    return np.int64((v * _H01) >> np.uint64(56))


@numba.njit(cache=True, parallel=True)
def _autocorrelation(words, nonzero, span):
    out = np.zeros(span + 1, dtype=np.int64)
    for x in numba.prange(1, span + 1):
        q = x >> 6
        r = np.uint64(x & 63)
        total = 0
        for t in range(nonzero.size):
            w = nonzero[t]
            if w < q:
                continue
            shifted = words[w - q] << r
            if r != np.uint64(0) and w - q - 1 >= 0:
                shifted |= words[w - q - 1] >> (np.uint64(64) - r)
            total += _popcount64(words[w] & shifted)
        out[x] = total
    return out


def pack_indicator(elements):
    """Pack sorted positive integers into a uint64 word array (bit a-1 <-> a)."""
    top = int(elements[-1])
    words = np.zeros((top + 63) // 64, dtype=np.uint64)
    pos = np.asarray(elements, dtype=np.int64) - 1
    np.bitwise_or.at(words, pos >> 6, np.left_shift(np.uint64(1), (pos & 63).astype(np.uint64)))
    return words


def autocorrelation(words, span):
    """Return ``out`` with ``out[x] = popcount(words & (words << x))`` for 0 < x <= span."""
    nonzero = np.flatnonzero(words).astype(np.int64)
    return _autocorrelation(words, nonzero, int(span))


def set_threads(n):
    numba.set_num_threads(max(1, min(int(n), numba.config.NUMBA_NUM_THREADS)))


def max_threads():
    return numba.config.NUMBA_NUM_THREADS
