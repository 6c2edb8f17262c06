"""Finite increasing sets of positive integers and their distance statistics.

A :class:`FiniteSet` holds ``a_1 < a_2 < ... < a_N``.  The central quantity is
the multiplicity ``c_A(x) = |A & (A + x)|``: the number of pairs of elements
at distance ``x``.  Two independent backends compute the whole multiplicity
table at once:

``naive``
    enumerates all ``N(N-1)/2`` pairwise differences and bins them;
``bitparallel``
    packs the set into a bit-vector and, for every shift ``x``, pops the
    count of the vector ANDed with its shifted copy.

All arithmetic is on exact integers.
"""
import json
from bisect import bisect_right
from dataclasses import dataclass
from functools import cached_property
import numbers

import numpy as np

from . import _bitparallel
from .errors import (
    BackendUnavailable,
    DeltaSetError,
    EmptySet,
    NonPositiveElement,
    NotIncreasing,
    Overflow,
    SingletonSet,
)

MAX_ELEMENT = 2**62
BITPARALLEL_LIMIT = 10**9

# naive backend switches from a dense bincount table to sparse merging above this span
_DENSE_SPAN_LIMIT = 50_000_000
# pairwise differences materialized per block in the naive backend
_BLOCK_PAIRS = 2_000_000

BACKENDS = ("naive", "bitparallel", "auto")


class FiniteSet:
    """Strictly increasing tuple of positive integers, immutable.

    Indexing is 0-based like any Python sequence; :meth:`term` gives the
    1-based ``a_n`` used in the math.
    """

    def __init__(self, values):
        values = list(values)
        if not values:
            raise EmptySet("a FiniteSet needs at least one element")
        checked = []
        prev = None
        for i, v in enumerate(values):
            if isinstance(v, bool) or not isinstance(v, numbers.Integral):
                raise DeltaSetError(f"element {v!r} at index {i} is not an integer")
            v = int(v)
            if v < 1:
                raise NonPositiveElement(i, v)
            if v > MAX_ELEMENT:
                raise Overflow(f"element {v} at index {i} exceeds 2^62")
            if prev is not None and v <= prev:
                raise NotIncreasing(i, prev, v)
            checked.append(v)
            prev = v
        arr = np.array(checked, dtype=np.int64)
        arr.setflags(write=False)
        self._a = arr

    @property
    def elements(self):
        return self._a

    def __len__(self):
        return len(self._a)

    def __iter__(self):
        return iter(self._a.tolist())

    def __getitem__(self, i):
        if isinstance(i, slice):
            return self._a[i].tolist()
        return int(self._a[i])

    def __contains__(self, x):
        j = np.searchsorted(self._a, x)
        return bool(j < len(self._a) and self._a[j] == x)

    def __eq__(self, other):
        if not isinstance(other, FiniteSet):
            return NotImplemented
        return np.array_equal(self._a, other._a)

    def __hash__(self):
        return hash(self._a.tobytes())

    def __repr__(self):
        if len(self) <= 8:
            return f"FiniteSet({self.tolist()})"
        head = ", ".join(str(v) for v in self._a[:4].tolist())
        return f"FiniteSet([{head}, ..., {self.max}], N={len(self)})"

    def tolist(self):
        return self._a.tolist()

    def term(self, n):
        """1-based term ``a_n``."""
        if not 1 <= n <= len(self._a):
            raise IndexError(f"term index {n} outside 1..{len(self._a)}")
        return int(self._a[n - 1])

    @property
    def min(self):
        return int(self._a[0])

    @property
    def max(self):
        return int(self._a[-1])

    @property
    def span(self):
        return self.max - self.min

    def prefix(self, n):
        """``A_n = {a_1 < ... < a_n}``."""
        if not 1 <= n <= len(self._a):
            raise IndexError(f"prefix length {n} outside 1..{len(self._a)}")
        return _trusted(self._a[:n])

    def shifted(self, t):
        if t < 0 or self.max + t > MAX_ELEMENT:
            raise Overflow(f"shift by {t} leaves the admissible range")
        return _trusted(self._a + t)

    @cached_property
    def indicator(self):
        """Packed uint64 indicator of the set over ``[1, a_N]``."""
        if self.max > BITPARALLEL_LIMIT:
            raise BackendUnavailable(
                f"a_N = {self.max} exceeds the bit-vector cap {BITPARALLEL_LIMIT}; use the naive backend"
            )
        words = _bitparallel.pack_indicator(self._a)
        words.setflags(write=False)
        return words

    def histogram(self, backend="auto"):
        """Cached :func:`distance_histogram`."""
        cache = self.__dict__.setdefault("_hist_cache", {})
        if backend not in cache:
            cache[backend] = distance_histogram(self, backend)
        return cache[backend]


def _trusted(arr):
    s = FiniteSet.__new__(FiniteSet)
    arr = np.array(arr, dtype=np.int64)
    arr.setflags(write=False)
    s._a = arr
    return s


def from_elements(values):
    """Validate ``values`` and return them as a :class:`FiniteSet`."""
    return FiniteSet(values)


@dataclass(frozen=True, eq=False)
class DistanceHistogram:
    """Multiplicity ``c(x)`` for every distance ``x`` with ``c(x) >= 1``.

    ``xs`` is ascending; absent distances have multiplicity 0.
    """

    xs: np.ndarray
    counts: np.ndarray
    source_size: int

    def __eq__(self, other):
        if not isinstance(other, DistanceHistogram):
            return NotImplemented
        return (
            self.source_size == other.source_size
            and np.array_equal(self.xs, other.xs)
            and np.array_equal(self.counts, other.counts)
        )

    def __len__(self):
        return len(self.xs)

    def count(self, x):
        j = np.searchsorted(self.xs, x)
        if j < len(self.xs) and self.xs[j] == x:
            return int(self.counts[j])
        return 0

    def count_many(self, xs):
        xs = np.asarray(xs, dtype=np.int64)
        if len(self.xs) == 0:
            return np.zeros(len(xs), dtype=np.int64)
        j = np.searchsorted(self.xs, xs)
        j_clip = np.minimum(j, len(self.xs) - 1)
        hit = (j < len(self.xs)) & (self.xs[j_clip] == xs)
        return np.where(hit, self.counts[j_clip], 0).astype(np.int64)

    def as_dict(self):
        return dict(zip(self.xs.tolist(), self.counts.tolist()))

    @property
    def total_pairs(self):
        return int(self.counts.sum())

    def to_csv(self):
        lines = ["x,count"]
        lines.extend(f"{x},{c}" for x, c in zip(self.xs.tolist(), self.counts.tolist()))
        return "\n".join(lines) + "\n"

    def tobytes(self):
        return self.xs.tobytes() + self.counts.tobytes()


def shift_intersect_count(A, x):
    """``|A & (A + x)|``, exactly.  ``x = 0`` gives ``N``."""
    if x < 0:
        raise ValueError("shift must be non-negative")
    a = A.elements
    if x == 0:
        return len(a)
    target = a - x
    j = np.searchsorted(a, target)
    ok = j < len(a)
    return int(np.count_nonzero(a[j[ok]] == target[ok]))


def _naive_counts(a):
    n = len(a)
    span = int(a[-1] - a[0])
    rows = max(1, _BLOCK_PAIRS // max(n, 1))
    if span <= _DENSE_SPAN_LIMIT:
        table = np.zeros(span + 1, dtype=np.int64)
        for i0 in range(0, n - 1, rows):
            i1 = min(i0 + rows, n - 1)
            block = a[None, i0 + 1:] - a[i0:i1, None]
            table += np.bincount(block[block > 0], minlength=span + 1)
        xs = np.flatnonzero(table)
        return xs.astype(np.int64), table[xs]
    parts_x, parts_c = [], []
    for i0 in range(0, n - 1, rows):
        i1 = min(i0 + rows, n - 1)
        block = a[None, i0 + 1:] - a[i0:i1, None]
        ux, uc = np.unique(block[block > 0], return_counts=True)
        parts_x.append(ux)
        parts_c.append(uc.astype(np.int64))
    if not parts_x:
        return np.zeros(0, np.int64), np.zeros(0, np.int64)
    allx = np.concatenate(parts_x)
    allc = np.concatenate(parts_c)
    xs, inv = np.unique(allx, return_inverse=True)
    counts = np.zeros(len(xs), dtype=np.int64)
    np.add.at(counts, inv, allc)
    return xs.astype(np.int64), counts


def _bitparallel_counts(A):
    span = A.span
    if span == 0:
        return np.zeros(0, np.int64), np.zeros(0, np.int64)
    out = _bitparallel.autocorrelation(A.indicator, span)
    xs = np.flatnonzero(out)
    return xs.astype(np.int64), out[xs]


def _auto_backend(A):
    if A.max > BITPARALLEL_LIMIT:
        return "naive"
    n = len(A)
    nonzero_words = min(n, (A.max + 63) // 64)
    return "bitparallel" if A.span * nonzero_words < n * (n - 1) // 2 else "naive"


def distance_histogram(A, backend="naive"):
    """Multiplicity of every positive distance in ``A``.

    ``backend`` is ``"naive"``, ``"bitparallel"`` or ``"auto"`` (cheaper of the
    two by operation count).  Both backends return identical histograms.
    """
    if backend == "auto":
        backend = _auto_backend(A)
    if backend == "naive":
        xs, counts = _naive_counts(A.elements)
    elif backend == "bitparallel":
        xs, counts = _bitparallel_counts(A)
    else:
        raise ValueError(f"unknown backend {backend!r}; expected one of {BACKENDS}")
    xs.setflags(write=False)
    counts.setflags(write=False)
    return DistanceHistogram(xs, counts, len(A))


def delta_set(A):
    """``Delta(A)``, the positive pairwise differences of ``A``."""
    if len(A) < 2:
        raise SingletonSet("Delta of a singleton is empty")
    return _trusted(A.histogram().xs)


def recursion_set(A, k, x_max):
    """Shifts ``x`` in ``[1, x_max]`` with ``|A & (A + x)| >= k``, ascending."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if x_max > A.span:
        raise ValueError(f"x_max={x_max} exceeds a_N - a_1 = {A.span}")
    h = A.histogram()
    keep = (h.xs <= x_max) & (h.counts >= k)
    return h.xs[keep].tolist()


def prefix_count(A, u):
    """Counting function ``A(u) = |{a in A : a <= u}|``."""
    if u < 0:
        raise ValueError("u must be non-negative")
    return bisect_right(A.elements, u)


def delta_with_provenance(B):
    """All differences ``b_s - b_t`` (s > t) as parallel arrays ``(x, s, t)``.

    ``s``/``t`` are 1-based indices.  Rows are sorted by ``x`` then ``t``.
    """
    b = B.elements
    nu = len(b)
    lo, hi = np.triu_indices(nu, k=1)
    xs = b[hi] - b[lo]
    order = np.lexsort((lo, xs))
    return xs[order], hi[order] + 1, lo[order] + 1


# -- JSON / CSV interfaces ---------------------------------------------------

def set_to_json(A):
    return json.dumps({"elements": A.tolist()})


def set_from_json(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DeltaSetError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("elements"), list):
        raise DeltaSetError('set file must be an object {"elements": [int, ...]}')
    return FiniteSet(doc["elements"])


def load_set(path):
    with open(path, encoding="utf-8") as fh:
        return set_from_json(fh.read())


def save_set(A, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(set_to_json(A) + "\n")
