from fractions import Fraction
import math

import pytest

from deltasets import FiniteSet, first_primes, generate, geometric_grid, power_constant_check, ratio_series
from deltasets.diagnostics import (
    KINDS,
    best_multiplier_case2,
    best_multiplier_case3,
    below,
    theorem_condition_check,
    trailing_extrema,
)
from deltasets.errors import DomainError, KindParamMissing

IDENT = FiniteSet(range(1, 10001))


def test_geometric_grid():
    g = geometric_grid(100)
    assert g[0] == 1 and g[-1] == 100
    assert g == sorted(set(g))


def test_identity_cor33_point():
    s = ratio_series(IDENT, IDENT, "a-of-b", grid=[100])
    assert s.points == ((100, 0.01),)


def test_identity_thm41_is_one_over_n():
    s = ratio_series(IDENT, IDENT, "a-of-nb", grid=[2, 10, 50, 100])
    for n, v in s.points:
        assert v == pytest.approx(1 / n, abs=1e-15)


def test_primes_over_nlogn():
    P = FiniteSet(first_primes(10000).tolist())
    s = ratio_series(P, None, "a-over-ntheta", grid=[10000], theta="log(n)")
    (_, v), = s.points
    assert 0.8 <= v <= 1.2
    assert v == pytest.approx(1.1370806698811415, rel=1e-12)


def test_theta_zero_points_are_skipped():
    P = FiniteSet(first_primes(100).tolist())
    s = ratio_series(P, None, "a-over-ntheta", grid=[1, 2, 50], theta="log(n)")
    assert s.skipped == (1,)
    assert [n for n, _ in s.points] == [2, 50]


def naive_value(kind, a, b, n, c=None, eps=None):
    # straight from the definitions, using exact Fractions and 1-based lists
    a1 = [None] + a
    b1 = [None] + b
    if kind == "sum-over-nsq":
        return Fraction(a1[n] + b1[n], n * n)
    if kind == "g-of-cf":
        t = math.floor(Fraction(c) * a1[n] / n)
        return Fraction(b1[t], t * n)
    if kind == "f-of-eps-b":
        s = math.floor(Fraction(eps) * b1[n])
        return Fraction(a1[s], s * n)
    if kind == "a-of-b":
        return Fraction(a1[b1[n]], n * b1[n])
    if kind == "a-of-nb":
        return Fraction(a1[n * b1[n]], n * n * b1[n])
    raise AssertionError(kind)


@pytest.mark.parametrize("kind, kw", [
    ("sum-over-nsq", {}),
    ("g-of-cf", {"c": "3/2"}),
    ("f-of-eps-b", {"eps": "1/3"}),
    ("a-of-b", {}),
    ("a-of-nb", {}),
])
def test_indices_match_definitions(kind, kw):
    a = generate("floor(n^1.5)", 3000).set.tolist()
    b = generate("floor(2*sqrt(n)) + n", 400).set.tolist()
    s = ratio_series(FiniteSet(a), FiniteSet(b), kind, grid=range(1, 400, 7), **kw)
    assert s.points
    for n, v in s.points:
        assert v == float(naive_value(kind, a, b, n, **{k: Fraction(x) for k, x in kw.items()}))


def test_missing_kind_params():
    with pytest.raises(KindParamMissing):
        ratio_series(IDENT, IDENT, "g-of-cf")
    with pytest.raises(KindParamMissing):
        ratio_series(IDENT, None, "a-over-ntheta")
    assert len(KINDS) == 8


def test_trailing_extrema():
    lo, hi = trailing_extrema([5, 1, 4, 3], window=0.5)
    assert lo == [5, 1, 1, 3] and hi == [5, 1, 4, 4]


def test_below_band():
    assert below(0.5, 1.0) is True
    assert below(1.0, 0.5) is False
    assert below(1.0 - 1e-14, 1.0) is None


def test_cor33_identity_verdict():
    v = theorem_condition_check(IDENT, IDENT, "C3.3")
    assert v.satisfied_empirically is True
    assert v.value == pytest.approx(1e-4, abs=1e-12)
    assert v.details["infinite_suggested"] is True


def test_erdos_freud_thm23_not_satisfied():
    A = generate("even-pow2-sums", 1024).set
    B = generate("odd-pow2-sums", 1024).set
    v = theorem_condition_check(A, B, "T2.3")
    assert v.satisfied_empirically is False
    assert v.value > 1


def test_primes_pow2_cor34():
    P = FiniteSet(first_primes(20000).tolist())
    B = generate("pow2", 40).set
    v = theorem_condition_check(P, B, "C3.4", theta="log(n)")
    assert v.satisfied_empirically is True
    assert v.value < 1


def test_cor34_needs_theta():
    with pytest.raises(KindParamMissing):
        theorem_condition_check(IDENT, IDENT, "C3.4")


def test_power_constant_cases():
    v = power_constant_check(1, 0.5, 0.1, 2)
    assert v.case == "2"
    assert format(v.threshold, ".12g") == format(4 / 27, ".12g")
    v = power_constant_check(0.4, 1, 0.4, 1)
    assert v.case == "3" and v.threshold == 0.25 and v.satisfied is True
    assert power_constant_check(1, 0.5, 1, 1.5).case == "1"
    assert power_constant_check(1, 0.5, 1, 3).case == "out-of-scope"
    with pytest.raises(DomainError):
        power_constant_check(1, 1.5, 1, 1)


def test_grid_optimal_multipliers():
    c, val = best_multiplier_case2(0.5, 2.0)
    assert abs(c - 1.5) <= 1e-3 and val == pytest.approx(4 / 27, abs=1e-6)
    c, val = best_multiplier_case3()
    assert abs(c - 1.0) <= 1e-3 and val == pytest.approx(0.5, abs=1e-6)
