from collections import Counter
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from deltasets import (
    FiniteSet,
    generate,
    khintchine_scan,
    lemma_bound,
    lemma_witness,
    lemma_witnesses,
    pigeonhole_witness,
)
from deltasets.errors import HOutOfRange, HypothesisNotSatisfied


def diffs(values):
    return {b - a for a, b in combinations(values, 2)}


def mult(values, x):
    s = set(values)
    return sum(1 for v in values if v - x in s)


def brute_witness(a, b, h):
    cands = sorted(x for x in diffs(b) if x >= h)
    return max(cands, key=lambda x: (mult(a, x), -x))


def test_lemma_bound_examples():
    assert lemma_bound(4, 5, 4, 4, 1) == (Fraction(7, 9), True)
    assert lemma_bound(2, 2, 2, 2, 1) == (Fraction(0), False)
    assert lemma_bound(4, 5, 4, 4, 2).value == Fraction(-11, 9)
    with pytest.raises(HOutOfRange):
        lemma_bound(4, 5, 4, 4, 3)


def test_lemma_witness_examples():
    A, B = FiniteSet([1, 2, 3, 5]), FiniteSet([1, 2, 3, 4])
    r = lemma_witness(A, B, 1)
    assert (r.x, r.multiplicity, r.bound, r.bound_met, r.strict_expected) == (1, 2, Fraction(7, 9), True, True)
    r = lemma_witness(A, B, 2)
    assert (r.x, r.multiplicity) == (2, 2)
    r = lemma_witness(FiniteSet([1, 2]), FiniteSet([1, 2]), 1)
    assert (r.x, r.multiplicity, r.bound, r.strict_expected) == (1, 1, 0, False)


def test_witness_pairs_and_provenance():
    A, B = FiniteSet([1, 2, 3, 5]), FiniteSet([1, 2, 3, 4])
    r = lemma_witness(A, B, 1)
    assert all(q - p == r.x and p in A and q in A for p, q in r.pairs)
    assert all(s - t == r.x and s in B and t in B for s, t in r.provenance)


values = st.lists(st.integers(1, 2000), min_size=2, max_size=40, unique=True).map(sorted)


@settings(max_examples=150, deadline=None)
@given(values, values)
def test_lemma_against_brute_force(a, b):
    A, B = FiniteSet(a), FiniteSet(b)
    hs = list(range(1, len(b) // 2 + 1))
    if not hs:
        return
    for h, r in zip(hs, lemma_witnesses(A, B, hs)):
        assert r.x == brute_witness(a, b, h)
        assert r.multiplicity == mult(a, r.x)
        assert r.bound_met
        if r.strict_expected:
            assert r.multiplicity > r.bound


@settings(max_examples=80, deadline=None)
@given(values, st.lists(st.integers(1, 2000), min_size=4, max_size=40, unique=True).map(sorted))
def test_subsampling_consistency(a, b):
    A, B = FiniteSet(a), FiniteSet(b)
    for h in range(2, len(b) // 2 + 1):
        sub = b[h - 1::h]
        if len(sub) < 2:
            continue
        best_sub = max(mult(a, x) for x in diffs(sub))
        assert lemma_witness(A, B, h).multiplicity >= best_sub


def test_pigeonhole_examples():
    r = pigeonhole_witness(FiniteSet([1, 2]), FiniteSet([1, 2]))
    assert (r.d, r.a_pair, r.b_pair) == (1, (2, 1), (2, 1))
    A = generate("even-pow2-sums", 64).set
    B = generate("odd-pow2-sums", 64).set
    with pytest.raises(HypothesisNotSatisfied):
        pigeonhole_witness(A, B)


def test_pigeonhole_sufficient_only():
    # no prefix satisfies a_N + b_nu <= N nu, yet 6 is a common distance
    A, B = FiniteSet([3, 6, 9, 12]), FiniteSet([2, 4, 6, 8])
    with pytest.raises(HypothesisNotSatisfied):
        pigeonhole_witness(A, B)
    assert 6 in diffs(A.tolist()) & diffs(B.tolist())


def random_dense_pair(rng):
    na, nb = rng.integers(2, 60, size=2)
    a = np.sort(rng.choice(np.arange(1, 2 * na + 5), size=na, replace=False)) + 1
    b = np.sort(rng.choice(np.arange(1, 2 * nb + 5), size=nb, replace=False)) + 1
    return a.tolist(), b.tolist()


def test_pigeonhole_random_membership():
    rng = np.random.default_rng(0)
    done = 0
    while done < 60:
        a, b = random_dense_pair(rng)
        try:
            r = pigeonhole_witness(FiniteSet(a), FiniteSet(b))
        except HypothesisNotSatisfied:
            continue
        assert r.d in diffs(a) and r.d in diffs(b)
        assert r.a_pair[0] - r.a_pair[1] == r.d == r.b_pair[0] - r.b_pair[1]
        done += 1


def test_khintchine_examples():
    A = generate("multiples(3)", 100).set
    (row,) = khintchine_scan(A, FiniteSet([1, 4, 7]), [300])
    assert (row.x, row.density) == (3, Fraction(99, 300))
    (row,) = khintchine_scan(FiniteSet(range(1, 101)), FiniteSet([1, 2]), [100])
    assert (row.x, row.density, row.reference) == (1, Fraction(99, 100), 1)
    (row,) = khintchine_scan(FiniteSet([1, 2, 4, 8]), FiniteSet([5, 10]), [8])
    assert (row.x, row.count) == (5, 0)


@settings(max_examples=80, deadline=None)
@given(values, st.lists(st.integers(1, 300), min_size=3, max_size=20, unique=True).map(sorted),
       st.integers(1, 2000))
def test_khintchine_finite_bound(a, b, n):
    # Cauchy-Schwarz over the shifted copies A_n + b_j inside [1, n + b_nu]
    A, B = FiniteSet(a), FiniteSet(b)
    n = min(n, A.max)
    (row,) = khintchine_scan(A, B, [n])
    an = sum(v <= n for v in a)
    assert row.count == max(sum(1 for v in a if v <= n and v - x in set(a)) for x in diffs(b))
    assert row.count >= Fraction(an * an, n + B.max) - Fraction(an, len(b) - 1)
