"""Integer sequence generators and a small formula language.

A spec is either a built-in name, optionally with numeric parameters::

    primes   pow2   even-pow2-sums   odd-pow2-sums   multiples(3)
    floor-exp10-alpha(0.5)   floor-exp10-nlogn

or a formula in ``n``::

    spec   := builtin | expr
    expr   := term (("+" | "-") term)*
    term   := factor (("*" | "/") factor)*
    factor := base ["^" factor]
    base   := NUMBER | "n" | IDENT "(" expr ")" | "(" expr ")"

with functions ``floor``, ``log`` (natural), ``log10``, ``sqrt``, ``exp``.
Formulas are evaluated in double precision; terms must come out integral
(wrap the expression in ``floor``) and may not exceed 2^53.
"""
from dataclasses import dataclass, field
import math
import re

import numpy as np

from .errors import (
    ArityError,
    DomainError,
    MonotonicityViolation,
    NoClosedForm,
    Overflow,
    ParamOutOfRange,
    ParseError,
    UnknownBuiltin,
)
from .finite_sets import MAX_ELEMENT, FiniteSet

FLOAT_EXACT_LIMIT = 2**53
MAX_PRIME_COUNT = 10**7

# name -> number of numeric parameters
BUILTINS = {
    "primes": 0,
    "pow2": 0,
    "even-pow2-sums": 0,
    "odd-pow2-sums": 0,
    "multiples": 1,
    "floor-exp10-alpha": 1,
    "floor-exp10-nlogn": 0,
}
CLOSED_FORM = {"pow2", "even-pow2-sums", "odd-pow2-sums", "multiples"}

FUNCTIONS = {
    "floor": np.floor,
    "log": np.log,
    "log10": np.log10,
    "sqrt": np.sqrt,
    "exp": np.exp,
}


# -- AST ---------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: float

    def eval(self, n):
        return np.full(np.shape(n), self.value, dtype=np.float64)

    def __str__(self):
        return repr(self.value)


@dataclass(frozen=True)
class Var:
    def eval(self, n):
        return np.asarray(n, dtype=np.float64)

    def __str__(self):
        return "n"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object

    def eval(self, n):
        x, y = self.left.eval(n), self.right.eval(n)
        if self.op == "+":
            return x + y
        if self.op == "-":
            return x - y
        if self.op == "*":
            return x * y
        if self.op == "/":
            return x / y
        return np.power(x, y)

    def __str__(self):
        return f"({self.left} {self.op} {self.right})"


@dataclass(frozen=True)
class Call:
    func: str
    arg: object

    def eval(self, n):
        return FUNCTIONS[self.func](self.arg.eval(n))

    def __str__(self):
        return f"{self.func}({self.arg})"


@dataclass(frozen=True)
class SequenceSpec:
    kind: str  # "builtin" or "formula"
    name: str = ""
    params: tuple = ()
    ast: object = None
    text: str = field(default="", compare=False)

    def evaluate(self, n):
        """Float value of a formula spec at ``n`` (scalar or array)."""
        if self.kind != "formula":
            raise TypeError("only formula specs can be evaluated pointwise")
        with np.errstate(all="ignore"):
            return self.ast.eval(n)

    def __str__(self):
        if self.text:
            return self.text
        if self.kind == "builtin":
            args = "(" + ", ".join(map(str, self.params)) + ")" if self.params else ""
            return self.name + args
        return str(self.ast)


# -- parser ------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+\.?\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^(),]))"
)
_BUILTIN_SHAPE = re.compile(
    r"^\s*(?P<name>[a-z][a-z0-9]*(?:-[a-z0-9]+)*)\s*"
    r"(?:\((?P<args>[^()]*)\))?\s*$"
)
_NUMBER = re.compile(r"^\s*(\d+\.?\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)\s*$")

_BASE_START = ("NUMBER", "'n'", "function name", "'('")


def _tokenize(text):
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(pos, ("a number, identifier or operator",), text)
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, expected):
        raise ParseError(self.peek()[2], expected, self.text)

    def expect_op(self, op, expected=None):
        kind, val, _ = self.peek()
        if kind == "op" and val == op:
            return self.take()
        self.fail(expected or (repr(op),))

    def parse(self):
        node = self.expr()
        if self.peek()[0] != "end":
            self.fail(("operator", "end of input"))
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()[1]
            node = BinOp(op, node, self.factor())
        return node

    def factor(self):
        base = self.base()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            return BinOp("^", base, self.factor())
        return base

    def base(self):
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            return Num(float(val))
        if kind == "ident":
            if val == "n":
                self.take()
                return Var()
            if val not in FUNCTIONS:
                if val in BUILTINS:
                    raise UnknownBuiltin(f"{val!r} is a built-in sequence and cannot appear inside a formula")
                raise ParseError(pos, ("'n'", *sorted(FUNCTIONS)), self.text)
            self.take()
            self.expect_op("(")
            if self.peek()[0] == "op" and self.peek()[1] == ")":
                raise ArityError(f"{val}() takes exactly one argument")
            arg = self.expr()
            if self.peek()[0] == "op" and self.peek()[1] == ",":
                raise ArityError(f"{val}() takes exactly one argument")
            self.expect_op(")", ("')'", "operator"))
            return Call(val, arg)
        if kind == "op" and val == "(":
            self.take()
            node = self.expr()
            self.expect_op(")", ("')'", "operator"))
            return node
        self.fail(_BASE_START)


def parse_spec(text):
    """Parse a sequence description into a :class:`SequenceSpec`."""
    m = _BUILTIN_SHAPE.match(text)
    if m and m.group("name") in BUILTINS:
        name = m.group("name")
        raw_args = m.group("args")
        args = []
        if raw_args is not None and raw_args.strip():
            for piece in raw_args.split(","):
                num = _NUMBER.match(piece)
                if num is None:
                    raise ParseError(text.index("(") + 1, ("NUMBER",), text)
                tok = num.group(1)
                args.append(int(tok) if tok.isdigit() else float(tok))
        if len(args) != BUILTINS[name]:
            raise ArityError(f"built-in {name!r} takes {BUILTINS[name]} parameter(s), got {len(args)}")
        return SequenceSpec("builtin", name, tuple(args), text=text.strip())
    try:
        ast = _Parser(text).parse()
    except (ParseError, UnknownBuiltin):
        if m and m.group("name") not in FUNCTIONS and m.group("name") != "n":
            raise UnknownBuiltin(
                f"unknown built-in {m.group('name')!r}; known: {', '.join(BUILTINS)}"
            ) from None
        raise
    return SequenceSpec("formula", ast=ast, text=text.strip())


# -- built-in generators -----------------------------------------------------

def primes_up_to(limit):
    """All primes ``<= limit`` (sieve of Eratosthenes over odd numbers)."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones((limit - 1) // 2, dtype=bool)  # sieve[i] <-> 2i + 3
    for i in range((math.isqrt(limit) - 1) // 2):
        if sieve[i]:
            p = 2 * i + 3
            sieve[(p * p - 3) // 2::p] = False
    return np.concatenate(([2], 2 * np.flatnonzero(sieve) + 3)).astype(np.int64)


def first_primes(count):
    if count > MAX_PRIME_COUNT:
        raise ParamOutOfRange(f"at most {MAX_PRIME_COUNT} primes")
    if count < 6:
        limit = 13
    else:
        # Rosser: p_n < n (ln n + ln ln n) for n >= 6
        limit = int(count * (math.log(count) + math.log(math.log(count)))) + 1
    return primes_up_to(limit)[:count]


def builtin_term(name, n, params=()):
    """``n``-th term of a built-in sequence with a closed form."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if name not in BUILTINS:
        raise UnknownBuiltin(f"unknown built-in {name!r}")
    if name not in CLOSED_FORM:
        raise NoClosedForm(f"{name} has no closed form; use generate()")
    if name == "pow2":
        value = 2**n
    elif name == "even-pow2-sums":
        # binary digits of n read in base 4
        value = int(format(n, "b"), 4)
    elif name == "odd-pow2-sums":
        value = 2 * int(format(n, "b"), 4)
    else:
        (m,) = params or (None,)
        if not isinstance(m, int) or m < 1:
            raise ParamOutOfRange("multiples(m) needs a positive integer m")
        value = m * n
    if value > MAX_ELEMENT:
        raise Overflow(f"{name} term {n} exceeds 2^62")
    return value


def _float_terms(values, count):
    """Validate float evaluations and convert them to Python ints."""
    values = np.asarray(values, dtype=np.float64)
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        raise DomainError(f"formula is not finite at n={bad[0] + 1}")
    big = np.flatnonzero(np.abs(values) > FLOAT_EXACT_LIMIT)
    if big.size:
        raise Overflow(f"term {big[0] + 1} exceeds 2^53, beyond exact float range")
    frac = np.flatnonzero(values != np.floor(values))
    if frac.size:
        i = frac[0]
        raise DomainError(
            f"term {i + 1} = {values[i]!r} is not an integer; wrap the formula in floor()"
        )
    return [int(v) for v in values.tolist()]


def _raw_terms(spec, count):
    n = np.arange(1, count + 1, dtype=np.float64)
    if spec.kind == "formula":
        return _float_terms(spec.evaluate(n), count)
    name = spec.name
    if name == "primes":
        return first_primes(count).tolist()
    if name in CLOSED_FORM:
        if name == "pow2" and count > 62:
            raise Overflow("pow2 term 63 exceeds 2^62")
        return [builtin_term(name, i, spec.params) for i in range(1, count + 1)]
    with np.errstate(all="ignore"):
        if name == "floor-exp10-alpha":
            (alpha,) = spec.params
            if alpha <= 0:
                raise ParamOutOfRange("floor-exp10-alpha needs alpha > 0")
            return _float_terms(np.floor(np.power(10.0, np.power(n, alpha))), count)
        # floor-exp10-nlogn: n / log n is undefined at n = 1, where b_1 := 1
        vals = np.floor(np.power(10.0, n / np.log(n)))
        vals[0] = 1.0
        return _float_terms(vals, count)


@dataclass(frozen=True)
class GenerationReport:
    set: FiniteSet
    repairs: tuple  # (index, formula_value, emitted_value), 1-based index

    def to_dict(self):
        return {
            "elements": self.set.tolist(),
            "repairs": [list(r) for r in self.repairs],
        }


def _enforce_monotone(raw, repair):
    out, repairs = [], []
    prev = 0
    for i, v in enumerate(raw, start=1):
        if v > prev and v >= 1:
            out.append(v)
            prev = v
            continue
        if not repair:
            raise MonotonicityViolation(i, v, prev)
        emitted = max(prev + 1, v, 1)
        repairs.append((i, v, emitted))
        out.append(emitted)
        prev = emitted
    if prev > MAX_ELEMENT:
        raise Overflow("repaired sequence exceeds 2^62")
    return out, tuple(repairs)


def generate(spec, count, repair=False):
    """First ``count`` terms of ``spec`` as a :class:`GenerationReport`.

    With ``repair=True`` every emitted value is ``max(previous + 1, raw, 1)``
    and each adjustment is logged; otherwise a raw value that is not a
    positive integer above its predecessor raises ``MonotonicityViolation``.
    """
    if isinstance(spec, str):
        spec = parse_spec(spec)
    if count < 1:
        raise ValueError("count must be >= 1")
    values, repairs = _enforce_monotone(_raw_terms(spec, count), repair)
    return GenerationReport(FiniteSet(values), repairs)


def terms_up_to(spec, limit, repair=True, max_count=10**6):
    """Generate all terms ``<= limit`` (stopping early at the 2^53/2^62 cap)."""
    if isinstance(spec, str):
        spec = parse_spec(spec)
    if spec.kind == "builtin" and spec.name == "primes":
        return FiniteSet(primes_up_to(limit).tolist())
    good = None
    count = 16
    while True:
        try:
            rep = generate(spec, min(count, max_count), repair)
        except Overflow:
            lo = good.set.__len__() if good else 0
            hi = min(count, max_count)
            while hi - lo > 1:
                mid = (lo + hi) // 2
                try:
                    generate(spec, mid, repair)
                    lo = mid
                except Overflow:
                    hi = mid
            if lo == 0:
                raise
            rep = generate(spec, lo, repair)
            break
        good = rep
        if rep.set.max > limit or count >= max_count:
            break
        count *= 2
    elems = [v for v in rep.set if v <= limit]
    if not elems:
        raise ParamOutOfRange(f"no term of {spec} is <= {limit}")
    return FiniteSet(elems)
