"""deltasets command line.

Every subcommand writes one document (JSON by default, CSV where a table
makes sense) to stdout or ``--out``.  Exit status: 0 on success, 1 when a
verdict or experiment fails or a hypothesis is not met, 2 on usage errors.
"""
import argparse
import json
import sys

import numpy as np

from . import _bitparallel, jsonio
from .diagnostics import (
    KINDS,
    THEOREMS,
    geometric_grid,
    power_constant_check,
    ratio_series,
    theorem_condition_check,
)
from .errors import DeltaSetError, HypothesisNotSatisfied, ParseError
from .experiments import EXPERIMENTS, run_experiment
from .finite_sets import BACKENDS, load_set, recursion_set, set_to_json
from .sequences import generate
from .witness import khintchine_scan, lemma_witness, pigeonhole_witness

GRAMMARS = {
    "--spec": (
        'builtin NAME[(p, ...)] with NAME in primes, pow2, even-pow2-sums, odd-pow2-sums, '
        'multiples(m), floor-exp10-alpha(alpha), floor-exp10-nlogn; or an expression in n '
        'built from numbers, + - * / ^, parentheses and floor/log/log10/sqrt/exp, '
        'e.g. "floor(n*log(n+2))"'
    ),
    "--grid": 'comma-separated integers "10,100,1000" or "geom:N_MAX[:RATIO]"',
    "--param": "KEY=VALUE, repeatable",
    "--a": 'path to a set file {"elements": [a_1, a_2, ...]}',
    "--b": 'path to a set file {"elements": [b_1, b_2, ...]}',
}

POWER_THEOREM = "T3.6"


class UsageError(Exception):
    def __init__(self, flag, message):
        super().__init__(message)
        self.flag = flag


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(None, message)


def _add_io(p, csv=False):
    p.add_argument("--out", help="write the document here instead of stdout")
    p.add_argument("--format", choices=["json", "csv"] if csv else ["json"], default="json")
    p.add_argument("--seed", type=int, default=0, help="seed for any randomness (default 0)")
    p.add_argument("--threads", type=int, default=None,
                   help="worker threads for the bit-parallel kernel (default: all cores)")


def build_parser():
    parser = _Parser(prog="deltasets", description="Distance sets of integer sequences.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="generate a finite set from a sequence spec")
    p.add_argument("--spec", required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--repair", action="store_true",
                   help="replace non-increasing terms by max(prev + 1, value)")
    _add_io(p)

    p = sub.add_parser("delta", help="distance set Delta(A)")
    p.add_argument("--a", required=True)
    p.add_argument("--backend", choices=BACKENDS, default="auto")
    _add_io(p, csv=True)

    p = sub.add_parser("hist", help="multiplicities |A & (A + x)| for all x")
    p.add_argument("--a", required=True)
    p.add_argument("--backend", choices=BACKENDS, default="auto")
    _add_io(p, csv=True)

    p = sub.add_parser("rk", help="recursion set R_k(A) up to x_max")
    p.add_argument("--a", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--x-max", type=int, default=None, help="default a_N - a_1")
    _add_io(p, csv=True)

    p = sub.add_parser("witness", help="best shift x >= h in Delta(B) and its lower bound")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--h", type=int, default=1)
    _add_io(p)

    p = sub.add_parser("pigeonhole", help="common distance forced by a crowded sumset")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    _add_io(p)

    p = sub.add_parser("scan", help="best prefix density of A & (A + x), x in Delta(B)")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--grid", default=None, help="default geom:a_N")
    _add_io(p, csv=True)

    p = sub.add_parser("check", help="ratio series (--kind) or theorem condition (--theorem)")
    p.add_argument("--a")
    p.add_argument("--b")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--kind", choices=KINDS)
    g.add_argument("--theorem", choices=THEOREMS + (POWER_THEOREM,))
    p.add_argument("--theta", help='expression in n, e.g. "log(n)"')
    p.add_argument("--c", type=float)
    p.add_argument("--eps", type=float)
    p.add_argument("--grid", default=None)
    p.add_argument("--param", action="append", default=[],
                   help="K, alpha, M, beta for T3.6; window, zero_tol otherwise")
    _add_io(p, csv=True)

    p = sub.add_parser("experiment", help="run a canned experiment")
    p.add_argument("--name", required=True, choices=sorted(EXPERIMENTS))
    p.add_argument("--N", type=int, default=None, help="shorthand for --param N=...")
    p.add_argument("--param", action="append", default=[])
    p.add_argument("--timing", action="store_true", help="include wall_time in the report")
    _add_io(p)
    return parser


def _params(items):
    out = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise UsageError("--param", f"bad --param {item!r}")
        out[key.strip()] = value.strip()
    return out


def _grid(text, default_max):
    if text is None:
        return geometric_grid(default_max)
    try:
        if text.startswith("geom:"):
            parts = text[5:].split(":")
            n_max = int(parts[0])
            ratio = float(parts[1]) if len(parts) > 1 else 1.25
            return geometric_grid(n_max, ratio)
        return [int(v) for v in text.split(",") if v.strip()]
    except (ValueError, IndexError):
        raise UsageError("--grid", f"cannot parse --grid {text!r}") from None


def _load(args, which):
    path = getattr(args, which)
    if path is None:
        raise UsageError(f"--{which}", f"--{which} is required here")
    try:
        return load_set(path)
    except OSError as exc:
        raise UsageError(f"--{which}", f"cannot read {path}: {exc.strerror}") from None


def _csv_rows(header, rows):
    return "\n".join([header] + [",".join(str(v) for v in r) for r in rows]) + "\n"


def _run(args):
    """Return (document text, exit status)."""
    cmd = args.command
    if cmd == "gen":
        try:
            report = generate(args.spec, args.count, repair=args.repair)
        except ParseError as exc:
            raise UsageError("--spec", str(exc)) from None
        for idx, raw, emitted in report.repairs:
            print(f"repaired a_{idx}: {raw} -> {emitted}", file=sys.stderr)
        return set_to_json(report.set) + "\n", 0

    if cmd in ("delta", "hist"):
        A = _load(args, "a")
        h = A.histogram(backend=args.backend)
        if cmd == "delta":
            if args.format == "csv":
                return _csv_rows("x", [[x] for x in h.xs.tolist()]), 0
            return jsonio.dumps({"delta": h.xs.tolist()}), 0
        if args.format == "csv":
            return h.to_csv(), 0
        return jsonio.dumps({"x": h.xs.tolist(), "count": h.counts.tolist()}), 0

    if cmd == "rk":
        A = _load(args, "a")
        x_max = A.span if args.x_max is None else args.x_max
        xs = recursion_set(A, args.k, x_max)
        if args.format == "csv":
            return _csv_rows("x", [[x] for x in xs]), 0
        return jsonio.dumps({"k": args.k, "x_max": x_max, "rk": xs}), 0

    if cmd == "witness":
        A, B = _load(args, "a"), _load(args, "b")
        report = lemma_witness(A, B, args.h)
        return jsonio.dumps(report), 0 if report.bound_met else 1

    if cmd == "pigeonhole":
        A, B = _load(args, "a"), _load(args, "b")
        return jsonio.dumps(pigeonhole_witness(A, B)), 0

    if cmd == "scan":
        A, B = _load(args, "a"), _load(args, "b")
        rows = khintchine_scan(A, B, _grid(args.grid, A.max))
        if args.format == "csv":
            return _csv_rows(
                "n,x,count,density,reference,correction",
                [[r.n, r.x, r.count] + [format(float(v), ".12g") for v in
                                        (r.density, r.reference, r.correction)] for r in rows],
            ), 0
        return jsonio.dumps({"rows": rows}), 0

    if cmd == "check":
        return _check(args)

    if cmd == "experiment":
        params = _params(args.param)
        if args.N is not None:
            params["N"] = str(args.N)
        report = run_experiment(args.name, params)
        return jsonio.dumps(report.to_dict(timing=args.timing)), 0 if report.passed else 1
    raise UsageError(None, f"unknown command {cmd}")


def _check(args):
    params = _params(args.param)
    if args.theorem == POWER_THEOREM:
        try:
            vals = {k: float(params[k]) for k in ("K", "alpha", "M", "beta")}
        except KeyError as exc:
            raise UsageError("--param", f"T3.6 needs --param {exc.args[0]}=VALUE") from None
        except ValueError as exc:
            raise UsageError("--param", str(exc)) from None
        verdict = power_constant_check(**vals)
        return jsonio.dumps(verdict), 1 if verdict.satisfied is False else 0

    window = float(params.pop("window", 0.5))
    A = _load(args, "a") if args.a else None
    B = _load(args, "b") if args.b else None
    if args.kind:
        grid = None if args.grid is None else _grid(args.grid, None)
        series = ratio_series(A, B, args.kind, grid=grid, theta=args.theta,
                              c=args.c, eps=args.eps, window=window)
        if args.format == "csv":
            return series.to_csv(), 0
        return jsonio.dumps(series), 0

    if A is None:
        raise UsageError("--a", "--theorem needs --a")
    zero_tol = float(params.pop("zero_tol", 0.05))
    grid = None if args.grid is None else _grid(args.grid, None)
    verdict = theorem_condition_check(
        A, B, args.theorem, theta=args.theta, c=args.c, eps=args.eps,
        grid_a=grid, grid_b=grid, window=window, zero_tol=zero_tol,
    )
    return jsonio.dumps(verdict), 1 if verdict.satisfied_empirically is False else 0


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.threads is not None:
            if args.threads < 1:
                raise UsageError("--threads", "--threads must be >= 1")
            _bitparallel.set_threads(args.threads)
        np.random.seed(args.seed)
        text, status = _run(args)
    except UsageError as exc:
        print(f"deltasets: error: {exc}", file=sys.stderr)
        if exc.flag in GRAMMARS:
            print(f"  {exc.flag}: {GRAMMARS[exc.flag]}", file=sys.stderr)
        elif exc.flag is None:
            parser.print_usage(sys.stderr)
        return 2
    except HypothesisNotSatisfied as exc:
        print(json.dumps({"error": "hypothesis-not-satisfied", "message": str(exc)}))
        return 1
    except ParseError as exc:
        print(f"deltasets: error: {exc}", file=sys.stderr)
        print(f"  --spec / --theta: {GRAMMARS['--spec']}", file=sys.stderr)
        return 2
    except DeltaSetError as exc:
        print(f"deltasets: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"deltasets: error: {exc}", file=sys.stderr)
        return 2

    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
