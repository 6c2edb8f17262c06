"""Finite witnesses for intersections of distance sets.

* :func:`lemma_witness` returns the shift ``x`` in ``Delta(B)``, ``x >= h``,
  that maximizes ``|A & (A + x)|`` and compares it with the Cauchy-Schwarz
  lower bound ``N^2/(a_N + b_nu) - N(2h - 1)/nu`` in exact rationals.
* :func:`pigeonhole_witness` finds a collision ``a_i + b_j = a_i' + b_j'`` in a
  prefix sumset small enough to force one, giving a common distance.
* :func:`khintchine_scan` measures, at given cut-offs ``n``, the best relative
  density of ``A & (A + x)`` over ``x`` in ``Delta(B)``.

Every search breaks ties toward the smallest shift.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .errors import HOutOfRange, HypothesisNotSatisfied, NoEligibleShift, SingletonSet
from .finite_sets import delta_with_provenance, prefix_count


class LemmaBound(NamedTuple):
    value: Fraction
    strict_expected: bool


def lemma_bound(N, a_N, nu, b_nu, h):
    """Exact lower bound ``N^2/(a_N + b_nu) - N(2h-1)/nu``.

    ``strict_expected`` is False only in the equality case ``h = 1`` and
    ``N * nu = a_N + b_nu``.
    """
    if h < 1 or 2 * h > nu:
        raise HOutOfRange(f"need 1 <= h <= nu/2, got h={h}, nu={nu}")
    if N < 1:
        raise ValueError("N must be >= 1")
    if a_N < N or b_nu < nu:
        raise ValueError("a_N >= N and b_nu >= nu must hold for sets of positive integers")
    value = Fraction(N * N, a_N + b_nu) - Fraction(N * (2 * h - 1), nu)
    strict = not (h == 1 and N * nu == a_N + b_nu)
    return LemmaBound(value, strict)


@dataclass(frozen=True)
class WitnessReport:
    x: int
    multiplicity: int
    bound: Fraction
    bound_met: bool
    strict_expected: bool
    pairs: tuple  # (a, a + x), both in A
    provenance: tuple  # (b_s, b_t) with b_s - b_t = x

    @property
    def beats_bound_strictly(self):
        return self.multiplicity * self.bound.denominator > self.bound.numerator

    def to_dict(self):
        return {
            "x": self.x,
            "multiplicity": self.multiplicity,
            "bound": {"num": self.bound.numerator, "den": self.bound.denominator},
            "bound_met": self.bound_met,
            "strict_expected": self.strict_expected,
            "pairs": [list(p) for p in self.pairs],
            "provenance": [list(p) for p in self.provenance],
        }


def _sample_pairs(A, x, limit):
    a = A.elements
    target = a + x
    j = np.searchsorted(a, target)
    ok = j < len(a)
    hits = a[ok][a[j[ok]] == target[ok]][:limit]
    return tuple((int(v), int(v) + x) for v in hits.tolist())


def lemma_witnesses(A, B, hs, max_pairs=5):
    """:func:`lemma_witness` for several ``h`` sharing one pass over ``Delta(B)``."""
    nu = len(B)
    for h in hs:
        if h < 1 or 2 * h > nu:
            raise HOutOfRange(f"need 1 <= h <= |B|/2 = {nu / 2}, got h={h}")
    dx, ds, dt = delta_with_provenance(B)
    ux, first = np.unique(dx, return_index=True)
    mult = A.histogram().count_many(ux)
    b = B.elements
    reports = []
    for h in hs:
        start = int(np.searchsorted(ux, h, side="left"))
        if start == len(ux):
            raise NoEligibleShift(f"no element of Delta(B) is >= {h}")
        best = start + int(np.argmax(mult[start:]))
        x = int(ux[best])
        m = int(mult[best])
        bound, strict = lemma_bound(len(A), A.max, nu, B.max, h)
        lo = int(first[best])
        rows = range(lo, min(lo + max_pairs, len(dx)))
        prov = tuple(
            (int(b[ds[r] - 1]), int(b[dt[r] - 1])) for r in rows if dx[r] == x
        )
        reports.append(
            WitnessReport(
                x=x,
                multiplicity=m,
                bound=bound,
                bound_met=m * bound.denominator >= bound.numerator,
                strict_expected=strict,
                pairs=_sample_pairs(A, x, max_pairs),
                provenance=prov,
            )
        )
    return reports


def lemma_witness(A, B, h, max_pairs=5):
    """Shift ``x >= h`` in ``Delta(B)`` maximizing ``|A & (A + x)|``, with its bound."""
    return lemma_witnesses(A, B, [h], max_pairs)[0]


@dataclass(frozen=True)
class CommonDistanceReport:
    d: int
    a_pair: tuple  # (a_i, a_i') with a_i - a_i' = d
    b_pair: tuple  # (b_j', b_j) with b_j' - b_j = d
    prefix: tuple  # (N, nu) used

    def to_dict(self):
        return {
            "d": self.d,
            "a_pair": list(self.a_pair),
            "b_pair": list(self.b_pair),
            "prefix": {"N": self.prefix[0], "nu": self.prefix[1]},
        }


def find_pigeonhole_prefix(A, B):
    """First ``(N, nu)`` with ``a_N + b_nu <= N * nu``, ordered by ``N + nu`` then ``N``."""
    a, b = A.elements, B.elements
    na, nb = len(a), len(b)
    for s in range(2, na + nb + 1):
        Ns = np.arange(max(1, s - nb), min(na, s - 1) + 1)
        if Ns.size == 0:
            continue
        nus = s - Ns
        ok = a[Ns - 1] + b[nus - 1] <= Ns * nus
        if ok.any():
            k = int(np.argmax(ok))
            return int(Ns[k]), int(nus[k])
    return None


def pigeonhole_witness(A, B):
    """Common distance of ``A`` and ``B`` forced by a crowded prefix sumset.

    Sums ``a_i + b_j`` (``i <= N``, ``j <= nu``) are scanned in row-major
    order; the first repeated value gives ``a_i + b_j = a_i' + b_j'`` with
    ``i > i'`` and hence ``d = a_i - a_i' = b_j' - b_j``.
    """
    found = find_pigeonhole_prefix(A, B)
    if found is None:
        raise HypothesisNotSatisfied(
            "no prefix pair (N, nu) satisfies a_N + b_nu <= N * nu within the given sets"
        )
    N, nu = found
    a, b = A.elements[:N], B.elements[:nu]
    sums = (a[:, None] + b[None, :]).ravel()
    _, first_idx, inverse = np.unique(sums, return_index=True, return_inverse=True)
    repeated = np.flatnonzero(first_idx[inverse] != np.arange(len(sums)))
    k = int(repeated[0])
    k0 = int(first_idx[inverse[k]])
    i, j = divmod(k, nu)
    i0, j0 = divmod(k0, nu)
    d = int(a[i] - a[i0])
    return CommonDistanceReport(
        d=d,
        a_pair=(int(a[i]), int(a[i0])),
        b_pair=(int(b[j0]), int(b[j])),
        prefix=(N, nu),
    )


@dataclass(frozen=True)
class KhintchineRow:
    n: int
    x: int
    count: int  # |A & (A + x) & [1, n]|
    density: Fraction  # count / n
    reference: Fraction  # (|A & [1, n]| / n)^2
    correction: Fraction  # (b_nu + 1) / n

    def to_dict(self):
        return {
            "n": self.n,
            "x": self.x,
            "count": self.count,
            "density": float(self.density),
            "reference": float(self.reference),
            "correction": float(self.correction),
        }


def khintchine_scan(A, B, n_grid):
    """Best ``x`` in ``Delta(B)`` for the prefix density of ``A & (A + x)`` at each ``n``."""
    if len(B) < 2:
        raise SingletonSet("Delta(B) is empty for a singleton B")
    grid = [int(n) for n in n_grid]
    if any(n < 1 or n > A.max for n in grid):
        raise ValueError(f"grid points must lie in [1, a_N] = [1, {A.max}]")
    ux = np.unique(delta_with_provenance(B)[0])
    a = A.elements
    grid_arr = np.asarray(grid, dtype=np.int64)
    counts = np.zeros((len(grid), len(ux)), dtype=np.int64)
    top = max(grid)
    for col, x in enumerate(ux.tolist()):
        if x >= top:
            break
        target = a - x
        j = np.searchsorted(a, target)
        ok = j < len(a)
        hit = np.zeros(len(a), dtype=bool)
        hit[ok] = a[j[ok]] == target[ok]
        counts[:, col] = np.searchsorted(a[hit], grid_arr, side="right")
    rows = []
    for r, n in enumerate(grid):
        best = int(np.argmax(counts[r]))
        c = int(counts[r, best])
        rows.append(
            KhintchineRow(
                n=n,
                x=int(ux[best]),
                count=c,
                density=Fraction(c, n),
                reference=Fraction(prefix_count(A, n), n) ** 2,
                correction=Fraction(B.max + 1, n),
            )
        )
    return rows
