"""Canned reproducible runs of the worked examples.

Each experiment only orchestrates the core modules and checks its own
expectations; ``run_experiment(name, params)`` returns an
:class:`ExperimentReport` whose ``passed`` flag says whether they held.

erdos-freud
    sums of even vs odd powers of 2: disjoint distance sets, ``b_n = 2 a_n``,
    and ``(a_n + b_n)/n^2 = (2^k + 1)/(2^k - 1)`` at ``n = 2^k - 1``.
primes-pow2
    distances ``2^m - 2^n`` shared by at least ``k`` pairs of primes, found
    repeatedly with the used powers removed.
sum-reciprocal
    ``a_n = floor(n log(n + 2))`` (divergent reciprocal sum) against
    ``b_n = floor(10^(n^alpha))``: witnesses for increasing ``h``.
power-constants
    ``a_n = floor(K n^(1+alpha))``, ``b_n = floor(M n^(1+beta))``: constant
    check plus a direct search of ``R_k(A) & Delta(B)``.
prime-khintchine
    the best ``x`` in ``Delta(B)`` for pairs of primes up to ``p_n`` against
    ``(n / ln n)(1 - eps)``.
"""
from dataclasses import dataclass, field
from fractions import Fraction
import inspect
import math
import time

import numpy as np

from .diagnostics import power_constant_check
from .errors import ParamOutOfRange, UnknownExperiment
from .finite_sets import FiniteSet, delta_with_provenance, recursion_set
from .sequences import first_primes, generate, primes_up_to, terms_up_to
from .witness import find_pigeonhole_prefix, khintchine_scan, lemma_witnesses


@dataclass
class ExperimentReport:
    name: str
    parameters: dict
    findings: dict
    passed: bool
    wall_time: float = field(default=0.0, compare=False)

    def to_dict(self, timing=False):
        d = {
            "name": self.name,
            "parameters": self.parameters,
            "findings": self.findings,
            "pass": self.passed,
        }
        if timing:
            d["wall_time"] = self.wall_time
        return d


def erdos_freud(N=1024):
    if not 2 <= N <= 4096:
        raise ParamOutOfRange("erdos-freud needs 2 <= N <= 4096")
    A = generate("even-pow2-sums", N).set
    B = generate("odd-pow2-sums", N).set
    doubling = bool(np.array_equal(B.elements, 2 * A.elements))
    common = np.intersect1d(A.histogram().xs, B.histogram().xs)
    ratios = []
    k = 1
    while 2**k - 1 <= N:
        n = 2**k - 1
        got = Fraction(A.term(n) + B.term(n), n * n)
        want = Fraction(2**k + 1, 2**k - 1)
        ratios.append({
            "k": k,
            "n": n,
            "ratio": float(got),
            "closed_form": float(want),
            "exact_match": got == want,
            "a_over_nsq": float(Fraction(A.term(n), n * n)),
        })
        k += 1
    prefix = find_pigeonhole_prefix(A, B)
    findings = {
        "a_max": A.max,
        "delta_a_size": len(A.histogram()),
        "delta_b_size": len(B.histogram()),
        "common_distances": common.tolist()[:10],
        "disjoint": common.size == 0,
        "b_equals_2a": doubling,
        "ratios": ratios,
        "pigeonhole_prefix": list(prefix) if prefix else None,
    }
    passed = (
        common.size == 0
        and doubling
        and all(r["exact_match"] for r in ratios)
        and prefix is None
    )
    return findings, passed


def _split_pow2_difference(x):
    # x = 2^m - 2^n = 2^n (2^(m-n) - 1), unique for m > n >= 1
    n = (x & -x).bit_length() - 1
    m = n + (x >> n).bit_length()
    return m, n


def primes_pow2(prime_limit=100000, k=10, witnesses=2):
    if not 10 <= prime_limit <= 10**7:
        raise ParamOutOfRange("primes-pow2 needs 10 <= prime_limit <= 10^7")
    if k < 1 or witnesses < 1:
        raise ParamOutOfRange("k and witnesses must be >= 1")
    P = FiniteSet(primes_up_to(prime_limit).tolist())
    hist = P.histogram()
    rk = np.asarray(recursion_set(P, k, P.span), dtype=np.int64)
    powers = [2**j for j in range(1, P.span.bit_length() + 1) if 2**j <= P.span + 2]
    found = []
    excluded = []
    while len(found) < witnesses and len(powers) >= 2:
        B = FiniteSet(powers)
        cand = np.intersect1d(np.unique(delta_with_provenance(B)[0]), rk)
        if cand.size == 0:
            break
        x = int(cand[0])
        m, n = _split_pow2_difference(x)
        found.append({
            "x": x,
            "m": m,
            "n": n,
            "multiplicity": hist.count(x),
            "excluded_powers": list(excluded),
        })
        excluded.extend([2**n, 2**m])
        powers = [p for p in powers if p not in (2**m, 2**n)]
    xs = [w["x"] for w in found]
    passed = (
        len(found) == witnesses
        and len(set(xs)) == len(xs)
        and all(w["multiplicity"] >= k for w in found)
    )
    findings = {
        "prime_count": len(P),
        "rk_size": int(rk.size),
        "witnesses": found,
    }
    return findings, passed


def sum_reciprocal(alpha=0.5, eps=0.25, count=5000, k=10):
    if not (0 < eps < 1 and 0 < alpha < 1 - eps):
        raise ParamOutOfRange("sum-reciprocal needs 0 < eps < 1 and 0 < alpha < 1 - eps")
    if not 10 <= count <= 10**5 or k < 1:
        raise ParamOutOfRange("sum-reciprocal needs 10 <= count <= 10^5 and k >= 1")
    a_spec = "floor(n*log(n+2))"
    A = generate(a_spec, count).set
    B = terms_up_to(f"floor-exp10-alpha({alpha!r})", A.span, repair=True)
    if len(B) < 2:
        raise ParamOutOfRange("B has fewer than two terms below a_N - a_1; raise count")
    hs = []
    h = 1
    while 2 * h <= len(B):
        hs.append(h)
        h *= 2
    reports = lemma_witnesses(A, B, hs)
    delta_b = np.unique(delta_with_provenance(B)[0])
    mult = A.histogram().count_many(delta_b)
    rk_hits = delta_b[mult >= k]
    findings = {
        "instance": {"a": a_spec, "b": f"floor(10^(n^{alpha!r}))"},
        "a_count": len(A),
        "a_max": A.max,
        "b_terms": B.tolist(),
        "witnesses": [
            {"h": h, **{key: r.to_dict()[key] for key in ("x", "multiplicity", "bound", "bound_met")}}
            for h, r in zip(hs, reports)
        ],
        "rk_intersection_size": int(rk_hits.size),
        "rk_intersection_sample": rk_hits[:10].tolist(),
    }
    passed = all(r.bound_met and r.x >= h for h, r in zip(hs, reports)) and rk_hits.size > 0
    return findings, passed


def power_constants(K=1.0, alpha=0.5, M=0.1, beta=2.0, count=2000, k=3):
    if count < 10 or count > 10**5 or k < 1:
        raise ParamOutOfRange("power-constants needs 10 <= count <= 10^5 and k >= 1")
    verdict = power_constant_check(K, alpha, M, beta)
    a_spec = f"floor({K!r}*n^{1 + alpha!r})"
    b_spec = f"floor({M!r}*n^{1 + beta!r})"
    genA = generate(a_spec, count, repair=True)
    A = genA.set
    B = terms_up_to(b_spec, A.span, repair=True)
    if len(B) < 2:
        raise ParamOutOfRange("B has fewer than two terms below a_N - a_1; raise count")
    delta_b = np.unique(delta_with_provenance(B)[0])
    mult = A.histogram().count_many(delta_b)
    hits = delta_b[mult >= k]
    findings = {
        "verdict": verdict.to_dict(),
        "a": a_spec,
        "b": b_spec,
        "b_note": "M = 1 gives the plain cube sequence when beta = 2",
        "a_repairs": len(genA.repairs),
        "b_terms": len(B),
        "rk_intersection_size": int(hits.size),
        "rk_intersection_sample": [
            {"x": int(x), "multiplicity": int(c)}
            for x, c in zip(hits[:10].tolist(), mult[mult >= k][:10].tolist())
        ],
    }
    passed = verdict.satisfied is not True or hits.size > 0
    return findings, passed


def prime_khintchine(n=2000, eps=0.5, b_spec="pow2"):
    if not 10 <= n <= 10**6:
        raise ParamOutOfRange("prime-khintchine needs 10 <= n <= 10^6")
    if not 0 < eps < 1:
        raise ParamOutOfRange("prime-khintchine needs 0 < eps < 1")
    A = FiniteSet(first_primes(n).tolist())
    B = terms_up_to(b_spec, A.max, repair=True)
    if len(B) < 2:
        raise ParamOutOfRange("B has fewer than two terms below p_n")
    (row,) = khintchine_scan(A, B, [A.max])
    target = math.ceil(n / math.log(n) * (1 - eps))
    findings = {
        "p_n": A.max,
        "b_spec": b_spec,
        "b_terms": len(B),
        "x": row.x,
        "count": row.count,
        "target": target,
        "normalized": float(Fraction(row.count * A.max, n * n)),
    }
    return findings, row.count >= target


EXPERIMENTS = {
    "erdos-freud": erdos_freud,
    "primes-pow2": primes_pow2,
    "sum-reciprocal": sum_reciprocal,
    "power-constants": power_constants,
    "prime-khintchine": prime_khintchine,
}


def _coerce(value, default):
    if not isinstance(value, str):
        return value
    if isinstance(default, bool):
        return value.lower() in ("1", "true", "yes")
    if isinstance(default, int):
        return int(float(value)) if "e" in value.lower() else int(value)
    if isinstance(default, float):
        return float(value)
    return value


def experiment_defaults(name):
    if name not in EXPERIMENTS:
        raise UnknownExperiment(f"unknown experiment {name!r}; expected one of {sorted(EXPERIMENTS)}")
    sig = inspect.signature(EXPERIMENTS[name])
    return {p.name: p.default for p in sig.parameters.values()}


def run_experiment(name, params=None):
    """Run a named experiment; string parameter values are coerced to the default's type."""
    defaults = experiment_defaults(name)
    params = dict(params or {})
    unknown = set(params) - set(defaults)
    if unknown:
        raise ParamOutOfRange(f"unknown parameter(s) for {name}: {sorted(unknown)}; known: {sorted(defaults)}")
    try:
        resolved = {key: _coerce(params.get(key, d), d) for key, d in defaults.items()}
    except ValueError as exc:
        raise ParamOutOfRange(str(exc)) from None
    t0 = time.perf_counter()
    findings, passed = EXPERIMENTS[name](**resolved)
    return ExperimentReport(name, resolved, findings, bool(passed), time.perf_counter() - t0)
