"""Finite-prefix diagnostics for the asymptotic hypotheses on ``A`` and ``B``.

Limits cannot be computed from a prefix.  Each hypothesis is turned into a
ratio series evaluated on an ``n``-grid; its liminf/limsup are *estimated* by
the inf/sup over a trailing window of the grid (by default the last half).
Every verdict carries that caveat.

Series kinds (``f(n) = a_n/n``, ``g(n) = b_n/n``):

================  ==========================================
``sum-over-nsq``  ``(a_n + b_n) / n^2``
``g-of-cf``       ``g(floor(c f(n))) / n``           needs ``c``
``f-of-eps-b``    ``f(floor(eps b_n)) / n``          needs ``eps``
``a-of-b``        ``a_{b_n} / (n b_n)``
``a-of-nb``       ``a_{n b_n} / (n^2 b_n)``
``a-over-ntheta`` ``a_n / (n theta(n))``             needs ``theta``
``theta-of-b``    ``theta(b_n) / n``                 needs ``theta``
``theta-of-nb``   ``theta(n b_n) / n``               needs ``theta``
================  ==========================================

Indices (``b_n``, ``n b_n``, ``floor(c f(n))``, ``floor(eps b_n)``) are computed
in exact integer/rational arithmetic; a point whose index falls outside the
available prefix is skipped and listed in ``RatioSeries.skipped``.
"""
from dataclasses import dataclass, field
from fractions import Fraction
import math
import numbers

import numpy as np

from .errors import DomainError, KindParamMissing
from .sequences import parse_spec

CAVEAT = "finite-prefix heuristic: trailing-window inf/sup of a ratio series, not a limit"
SLACK = 1e-12
DEFAULT_ZERO_TOL = 0.05

KINDS = (
    "sum-over-nsq",
    "g-of-cf",
    "f-of-eps-b",
    "a-of-b",
    "a-of-nb",
    "a-over-ntheta",
    "theta-of-b",
    "theta-of-nb",
)
_NEEDS_B = {"sum-over-nsq", "g-of-cf", "f-of-eps-b", "a-of-b", "a-of-nb", "theta-of-b", "theta-of-nb"}
_NEEDS_A = {"sum-over-nsq", "g-of-cf", "f-of-eps-b", "a-of-b", "a-of-nb", "a-over-ntheta"}
_THETA_KINDS = {"a-over-ntheta", "theta-of-b", "theta-of-nb"}

THEOREMS = ("T2.3", "T3.1.1", "T3.1.2", "T3.1.3", "T3.1.4", "C3.3", "C3.4", "T4.1", "C4.3")


def exact(value):
    """Exact rational for a parameter; floats are read as the decimal they print as."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, str):
        return Fraction(value)
    return Fraction(repr(float(value)))


class ThetaSpec:
    """Positive function ``theta(n)`` given as a formula in ``n``, e.g. ``log(n)``."""

    def __init__(self, text):
        spec = parse_spec(text) if isinstance(text, str) else text
        if spec.kind != "formula":
            raise DomainError("theta must be a formula in n, not a built-in sequence")
        self.spec = spec
        self.text = str(spec)

    def __call__(self, n):
        v = self.get(n)
        if v is None:
            raise DomainError(f"theta({n}) is not a positive real")
        return v

    def get(self, n):
        """``theta(n)``, or None where it is not a positive finite real."""
        v = float(self.spec.evaluate(np.float64(n)))
        return v if math.isfinite(v) and v > 0 else None

    def __repr__(self):
        return f"ThetaSpec({self.text!r})"


def geometric_grid(n_max, ratio=1.25, n_min=1):
    """``floor(ratio^j)`` for j = 0, 1, ... within ``[n_min, n_max]``, plus ``n_max``."""
    if ratio <= 1:
        raise ValueError("ratio must exceed 1")
    pts = set()
    r = 1.0
    while r <= n_max:
        v = int(math.floor(r))
        if v >= n_min:
            pts.add(v)
        r *= ratio
    if n_max >= n_min:
        pts.add(int(n_max))
    return sorted(pts)


def _fmt(v):
    return format(v, ".12g")


@dataclass(frozen=True)
class RatioSeries:
    kind: str
    points: tuple  # (n, value), n strictly increasing
    running_inf: tuple
    running_sup: tuple
    skipped: tuple = ()
    window: float = 0.5
    caveat: str = CAVEAT
    params: dict = field(default_factory=dict)

    @property
    def ns(self):
        return [p[0] for p in self.points]

    @property
    def values(self):
        return [p[1] for p in self.points]

    @property
    def liminf_estimate(self):
        return self.running_inf[-1] if self.points else math.nan

    @property
    def limsup_estimate(self):
        return self.running_sup[-1] if self.points else math.nan

    def to_csv(self):
        lines = ["n,value,running_inf,running_sup"]
        for (n, v), lo, hi in zip(self.points, self.running_inf, self.running_sup):
            lines.append(f"{n},{_fmt(v)},{_fmt(lo)},{_fmt(hi)}")
        return "\n".join(lines) + "\n"

    def to_dict(self):
        return {
            "kind": self.kind,
            "params": self.params,
            "window": self.window,
            "points": [[n, float(_fmt(v))] for n, v in self.points],
            "liminf_estimate": float(_fmt(self.liminf_estimate)),
            "limsup_estimate": float(_fmt(self.limsup_estimate)),
            "skipped": list(self.skipped),
            "caveat": self.caveat,
        }


def trailing_extrema(values, window=0.5):
    """Per-point inf/sup over the last ``ceil(window * (i + 1))`` values."""
    lows, highs = [], []
    for i in range(len(values)):
        width = max(1, math.ceil(window * (i + 1)))
        chunk = values[i + 1 - width:i + 1]
        lows.append(min(chunk))
        highs.append(max(chunk))
    return lows, highs


def series_index(kind, A, B, n, c=None, eps=None):
    """Integer index the point ``n`` of ``kind`` reads, or None if out of range.

    Returned as ``(index, denominator)`` with the value being
    ``a_index / denominator`` (or ``b_index / ...`` for ``g-of-cf``).
    """
    nA = len(A) if A is not None else 0
    nB = len(B) if B is not None else 0
    if kind == "sum-over-nsq":
        if n > nA or n > nB:
            return None
        return n, n * n
    if kind == "g-of-cf":
        if n > nA:
            return None
        tau = math.floor(c * A.term(n) / n)
        if tau < 1 or tau > nB:
            return None
        return tau, tau * n
    if kind == "f-of-eps-b":
        if n > nB:
            return None
        sigma = math.floor(eps * B.term(n))
        if sigma < 1 or sigma > nA:
            return None
        return sigma, sigma * n
    if kind == "a-of-b":
        if n > nB:
            return None
        bn = B.term(n)
        if bn > nA:
            return None
        return bn, n * bn
    if kind == "a-of-nb":
        if n > nB:
            return None
        bn = B.term(n)
        if n * bn > nA:
            return None
        return n * bn, n * n * bn
    raise ValueError(kind)


def ratio_series(A, B, kind, grid=None, theta=None, c=None, eps=None, window=0.5):
    """Evaluate a diagnostic ratio on an ``n``-grid with trailing inf/sup."""
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
    if kind == "g-of-cf" and c is None:
        raise KindParamMissing("kind g-of-cf needs the constant c")
    if kind == "f-of-eps-b" and eps is None:
        raise KindParamMissing("kind f-of-eps-b needs eps")
    if kind in _THETA_KINDS and theta is None:
        raise KindParamMissing(f"kind {kind} needs theta")
    if kind in _NEEDS_B and B is None:
        raise KindParamMissing(f"kind {kind} needs a second set B")
    if kind in _NEEDS_A and A is None:
        raise KindParamMissing(f"kind {kind} needs the set A")
    if theta is not None and not isinstance(theta, ThetaSpec):
        theta = ThetaSpec(theta)
    c_x = exact(c) if c is not None else None
    eps_x = exact(eps) if eps is not None else None
    if grid is None:
        if kind in ("a-over-ntheta", "g-of-cf"):
            limit = len(A)
        elif kind == "sum-over-nsq":
            limit = min(len(A), len(B))
        else:
            limit = len(B)
        grid = geometric_grid(limit)
    grid = sorted(set(int(n) for n in grid))
    if grid and grid[0] < 1:
        raise ValueError("grid points must be >= 1")

    points, skipped = [], []
    for n in grid:
        if kind in _THETA_KINDS:
            if n > (len(A) if kind == "a-over-ntheta" else len(B)):
                skipped.append(n)
                continue
            arg = n
            if kind == "theta-of-b":
                arg = B.term(n)
            elif kind == "theta-of-nb":
                arg = n * B.term(n)
            t = theta.get(arg)
            if t is None:
                skipped.append(n)
                continue
            v = A.term(n) / (n * t) if kind == "a-over-ntheta" else t / n
        else:
            idx = series_index(kind, A, B, n, c_x, eps_x)
            if idx is None:
                skipped.append(n)
                continue
            i, den = idx
            if kind == "sum-over-nsq":
                num = A.term(n) + B.term(n)
            elif kind == "g-of-cf":
                num = B.term(i)
            else:
                num = A.term(i)
            v = float(Fraction(num, den))
        points.append((n, v))

    lows, highs = trailing_extrema([v for _, v in points], window)
    params = {}
    if c is not None:
        params["c"] = str(c_x)
    if eps is not None:
        params["eps"] = str(eps_x)
    if theta is not None:
        params["theta"] = theta.text
    return RatioSeries(
        kind=kind,
        points=tuple(points),
        running_inf=tuple(lows),
        running_sup=tuple(highs),
        skipped=tuple(skipped),
        window=window,
        params=params,
    )


# -- verdicts -----------------------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    theorem: str
    value: float
    threshold: float
    satisfied_empirically: object  # True, False, or None when inconclusive
    caveat: str = CAVEAT
    details: dict = field(default_factory=dict)

    def to_dict(self):
        def clean(v):
            if isinstance(v, float):
                return float(_fmt(v)) if math.isfinite(v) else None
            if isinstance(v, dict):
                return {k: clean(x) for k, x in v.items()}
            if isinstance(v, (list, tuple)):
                return [clean(x) for x in v]
            return v

        return {
            "theorem": self.theorem,
            "value": clean(self.value),
            "threshold": clean(self.threshold),
            "satisfied_empirically": self.satisfied_empirically,
            "caveat": self.caveat,
            "details": clean(self.details),
        }


def below(value, threshold):
    """``value < threshold`` with a 1e-12 band reported as inconclusive (None)."""
    if not math.isfinite(value):
        return False
    margin = threshold - value
    if abs(margin) <= SLACK:
        return None
    return margin > 0


def _zero_test(value, zero_tol):
    return bool(math.isfinite(value) and value <= zero_tol)


def _growth_check(A, window):
    """Trailing sup of ``a_n / n^2``, evidence for the standing hypothesis a_n = o(n^2)."""
    grid = geometric_grid(len(A))
    vals = [A.term(n) / (n * n) for n in grid]
    return trailing_extrema(vals, window)[1][-1]


def theorem_condition_check(A, B, theorem, theta=None, c=None, eps=None,
                            grid_a=None, grid_b=None, window=0.5, zero_tol=DEFAULT_ZERO_TOL):
    """Evaluate one theorem hypothesis on finite prefixes of ``A`` and ``B``.

    Conditions of the form ``liminf < t`` compare the trailing-window inf with
    ``t``; conditions ``liminf = 0`` accept a trailing inf ``<= zero_tol``.
    """
    if theorem not in THEOREMS:
        raise ValueError(f"unknown theorem id {theorem!r}; expected one of {THEOREMS}")
    details = {}

    def series(kind, grid, **kw):
        s = ratio_series(A, B, kind, grid=grid, window=window, **kw)
        if not s.points:
            raise DomainError(f"no admissible grid point for {kind}; generate longer prefixes")
        details.setdefault("series", {})[kind] = {
            "n_range": [s.points[0][0], s.points[-1][0]],
            "liminf_estimate": s.liminf_estimate,
            "limsup_estimate": s.limsup_estimate,
            "skipped": len(s.skipped),
        }
        return s

    if theorem == "T2.3":
        value = series("sum-over-nsq", grid_a).liminf_estimate
        details["nonempty_by_pigeonhole"] = below(value, 1.0)
        return Verdict(theorem, value, 0.0, _zero_test(value, zero_tol), details=details)

    if theorem in ("T3.1.1", "T3.1.2"):
        if c is None:
            raise KindParamMissing(f"{theorem} needs the constant c")
        if exact(c) <= 1:
            raise DomainError("c must exceed 1")
        value = series("g-of-cf", grid_a, c=c).liminf_estimate
        details["a_over_nsq_sup"] = _growth_check(A, window)
        if theorem == "T3.1.1":
            threshold = float(1 - 1 / exact(c))
            return Verdict(theorem, value, threshold, below(value, threshold), details=details)
        return Verdict(theorem, value, 0.0, _zero_test(value, zero_tol), details=details)

    if theorem in ("T3.1.3", "T3.1.4"):
        if eps is None:
            raise KindParamMissing(f"{theorem} needs eps")
        if exact(eps) <= 0:
            raise DomainError("eps must be positive")
        value = series("f-of-eps-b", grid_b, eps=eps).liminf_estimate
        details["a_over_nsq_sup"] = _growth_check(A, window)
        if theorem == "T3.1.3":
            return Verdict(theorem, value, 1.0, below(value, 1.0), details=details)
        return Verdict(theorem, value, 0.0, _zero_test(value, zero_tol), details=details)

    if theorem == "C3.3":
        value = series("a-of-b", grid_b).liminf_estimate
        details["a_over_nsq_sup"] = _growth_check(A, window)
        details["infinite_suggested"] = _zero_test(value, zero_tol)
        return Verdict(theorem, value, 1.0, below(value, 1.0), details=details)

    if theorem == "T4.1":
        value = series("a-of-nb", grid_b).liminf_estimate
        return Verdict(theorem, value, 0.5, below(value, 0.5), details=details)

    if theta is None:
        raise KindParamMissing(f"{theorem} needs theta")
    if not isinstance(theta, ThetaSpec):
        theta = ThetaSpec(theta)
    sa = series("a-over-ntheta", grid_a, theta=theta)
    ell_lo, ell_hi = sa.liminf_estimate, sa.limsup_estimate

    if theorem == "C3.4":
        sb = series("theta-of-b", grid_b, theta=theta)
        ellp_lo, ellp_hi = sb.liminf_estimate, sb.limsup_estimate
        p1, p2 = ell_lo * ellp_hi, ell_hi * ellp_lo
        details.update(
            ell_inf=ell_lo, ell_sup=ell_hi, ell_prime_inf=ellp_lo, ell_prime_sup=ellp_hi,
            product_inf_sup=p1, product_sup_inf=p2,
            infinite_suggested=_zero_test(p1, zero_tol) or _zero_test(p2, zero_tol),
            note=(
                "either vanishing product suggests infinitely many common distances, "
                "so both ell_inf*ell'_sup = 0 and ell_sup*ell'_inf = 0 are tested"
            ),
        )
        value = min(p1, p2)
        return Verdict(theorem, value, 1.0, below(value, 1.0), details=details)

    # C4.3
    sb = series("theta-of-nb", grid_b, theta=theta)
    l1, l2 = ell_hi, sb.liminf_estimate
    details.update(l1=l1, l2=l2)
    value = l1 * l2
    return Verdict(theorem, value, 0.5, below(value, 0.5), details=details)


# -- closed-form constants for power-growth sets ------------------------------

@dataclass(frozen=True)
class PowerVerdict:
    case: str  # "1", "2", "3" or "out-of-scope"
    threshold: object
    value: object
    margin: object
    satisfied: object
    conclusion: str

    def to_dict(self):
        def f(v):
            return float(_fmt(v)) if isinstance(v, float) else v

        return {
            "case": self.case,
            "threshold": f(self.threshold),
            "value": f(self.value),
            "margin": f(self.margin),
            "satisfied": self.satisfied,
            "conclusion": self.conclusion,
        }


def power_constant_check(K, alpha, M, beta):
    """Classify ``a_n <= K n^(1+alpha)``, ``b_n <= M n^(1+beta)`` and check the constant.

    Case 1: ``alpha < 1, beta < 1/alpha``; case 2: ``alpha < 1, beta = 1/alpha``
    with ``K^beta M < alpha/(1+alpha)^(beta+1)``; case 3: ``alpha = beta = 1``
    with ``K M < 1/4``.  ``beta = 1/alpha`` is tested with relative tolerance 1e-12.
    """
    for name, v in (("K", K), ("alpha", alpha), ("M", M), ("beta", beta)):
        if not (isinstance(v, numbers.Real) and math.isfinite(v) and v > 0):
            raise DomainError(f"{name} must be a positive real, got {v!r}")
    if alpha > 1:
        raise DomainError("alpha must lie in (0, 1]")
    K, alpha, M, beta = float(K), float(alpha), float(M), float(beta)
    if alpha < 1:
        inv = 1.0 / alpha
        if math.isclose(beta, inv, rel_tol=SLACK):
            threshold = alpha / (1.0 + alpha) ** (beta + 1.0)
            value = K**beta * M
            ok = below(value, threshold)
            return PowerVerdict(
                "2", threshold, value, threshold - value, ok,
                "R_k(A) & Delta(B) nonempty for all k" if ok else "constant condition fails",
            )
        if beta < inv:
            return PowerVerdict("1", None, None, None, True, "R_k(A) & Delta(B) infinite for all k")
        return PowerVerdict("out-of-scope", None, None, None, None, "beta > 1/alpha: no conclusion")
    if math.isclose(beta, 1.0, rel_tol=SLACK):
        threshold = 0.25
        value = K * M
        ok = below(value, threshold)
        return PowerVerdict(
            "3", threshold, value, threshold - value, ok,
            "Delta(A) & Delta(B) nonempty" if ok else "constant condition fails",
        )
    return PowerVerdict("out-of-scope", None, None, None, None, "alpha = 1 needs beta = 1")


def best_multiplier_case2(alpha, beta, step=1e-3, c_max=4.0):
    """Grid maximum of ``(c - 1)/c^(beta+1)`` over ``c`` in ``(1, c_max]``."""
    m = int(round((c_max - 1.0) / step))
    cs = 1.0 + step * np.arange(1, m + 1)
    vals = (cs - 1.0) / cs ** (beta + 1.0)
    k = int(np.argmax(vals))
    return float(cs[k]), float(vals[k])


def best_multiplier_case3(step=1e-3, c_max=4.0):
    """Grid maximum of ``c/(1 + c^2)`` over ``c`` in ``(0, c_max]``."""
    m = int(round(c_max / step))
    cs = step * np.arange(1, m + 1)
    vals = cs / (1.0 + cs * cs)
    k = int(np.argmax(vals))
    return float(cs[k]), float(vals[k])
