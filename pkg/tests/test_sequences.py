from fractions import Fraction
import math

import numpy as np
import pytest

from deltasets import builtin_term, first_primes, generate, parse_spec, primes_up_to, terms_up_to
from deltasets.errors import (
    ArityError,
    DomainError,
    MonotonicityViolation,
    NoClosedForm,
    Overflow,
    ParseError,
    UnknownBuiltin,
)


def is_prime(m):
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


def test_parse_builtin_and_formula():
    s = parse_spec("primes")
    assert s.kind == "builtin" and s.name == "primes"
    f = parse_spec("floor(0.38 * n^1.5)")
    assert f.kind == "formula"
    assert f.evaluate(np.array([4.0])).tolist() == [3.0]


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse_spec("floor(n ^")
    assert info.value.position == 9


def test_power_is_right_associative():
    assert parse_spec("2^3^2").evaluate(np.array([1.0])).tolist() == [512.0]


@pytest.mark.parametrize("text, exc", [
    ("log(n, 2)", ArityError),
    ("multiples", ArityError),
    ("fibonacci", UnknownBuiltin),
    ("n + primes(n)", UnknownBuiltin),
    ("n +", ParseError),
])
def test_parse_failures(text, exc):
    with pytest.raises(exc):
        parse_spec(text)


def test_builtin_examples():
    assert generate("even-pow2-sums", 5).set.tolist() == [1, 4, 5, 16, 17]
    assert generate("odd-pow2-sums", 5).set.tolist() == [2, 8, 10, 32, 34]
    assert generate("pow2", 4).set.tolist() == [2, 4, 8, 16]
    assert generate("multiples(3)", 4).set.tolist() == [3, 6, 9, 12]


def test_repair_log():
    rep = generate("floor(0.38 * n^1.5)", 4, repair=True)
    assert rep.set.tolist() == [1, 2, 3, 4]
    assert rep.repairs == ((1, 0, 1), (2, 1, 2), (3, 1, 3), (4, 3, 4))
    with pytest.raises(MonotonicityViolation):
        generate("floor(0.38 * n^1.5)", 4)


def test_strict_formula_needs_no_repair():
    assert generate("n^2 + 1", 50, repair=True).repairs == ()


def test_non_integer_and_domain():
    with pytest.raises(DomainError):
        generate("n / 3", 3)
    with pytest.raises(DomainError):
        generate("log(n - 1)", 3)


def test_builtin_term():
    assert builtin_term("even-pow2-sums", 7) == 21
    assert builtin_term("pow2", 10) == 1024
    assert builtin_term("even-pow2-sums", 2**4 - 1) == 85
    with pytest.raises(NoClosedForm):
        builtin_term("primes", 3)
    with pytest.raises(Overflow):
        builtin_term("pow2", 63)


def test_even_sums_enumeration_oracle():
    # ones only at even bit positions, by brute force over integers
    brute = [m for m in range(1, 70000) if m & 0xAAAAAAAA == 0][:200]
    assert generate("even-pow2-sums", 200).set.tolist() == brute
    assert [builtin_term("even-pow2-sums", n) for n in range(1, 201)] == brute


def test_odd_is_double_even():
    a = generate("even-pow2-sums", 2000).set.elements
    b = generate("odd-pow2-sums", 2000).set.elements
    assert np.array_equal(b, 2 * a)


@pytest.mark.parametrize("k", range(4, 13))
def test_even_sums_ratio_near_one_third(k):
    n = 2**k - 1
    ratio = Fraction(builtin_term("even-pow2-sums", n), n * n)
    assert ratio == Fraction(2**k + 1, 3 * (2**k - 1))
    assert abs(ratio - Fraction(1, 3)) <= Fraction(2, 2**k)


def test_primes_against_trial_division():
    assert primes_up_to(5000).tolist() == [m for m in range(5001) if is_prime(m)]
    assert first_primes(10000)[-1] == 104729
    assert len(first_primes(1)) == 1 and len(first_primes(7)) == 7


def test_exp_sequences():
    assert generate("floor-exp10-alpha(0.5)", 5).set.tolist() == [10, 25, 53, 100, 172]
    rep = generate("floor-exp10-nlogn", 6, repair=True)
    assert rep.set.term(1) == 1 and rep.set.term(2) == 768
    assert rep.repairs[0] == (3, 537, 769)


def test_terms_up_to():
    B = terms_up_to("pow2", 1000)
    assert B.tolist() == [2**j for j in range(1, 10)]
    assert terms_up_to("n", 7).tolist() == list(range(1, 8))
