"""Prescribed-curvature functions H(y) on [-1, 1].

A small smooth expression language (parsed into an AST), exact symbolic
differentiation, zero finding with multiplicities, and the evenness /
inequality certificates that decide which curvature signs admit a closed
rotational profile.

Only C^1-smooth primitives are admitted (sin, cos, tan, sinh, cosh, tanh,
exp, sqrt, arithmetic, integer powers): multiplicity detection relies on
repeated symbolic differentiation, which non-smooth primitives would break.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "HAst",
    "HFunction",
    "ZeroRecord",
    "ClassReport",
    "HParseError",
    "HDomainError",
    "ZeroResolutionError",
    "parse_h",
    "eval_h",
    "find_zeros",
    "is_even",
    "class_membership",
    "to_source",
    "scan_bisect",
]

DOMAIN = (-1.0, 1.0)

# Tolerances; see module tests for how they interact.
FINITE_GRID = 2048          # construction-time finiteness check
EVEN_GRID = 1024            # evenness certification grid
EVEN_TOL = 1e-10
ZERO_GRID = 4096            # sign-scan grid for root finding
ROOT_XTOL = 1e-12           # bisection half-width target
ROOT_VALUE_TOL = 1e-9       # |H| at a reported root
ROOT_SEPARATION = 1e-6      # closer pairs are reported unresolved
DERIV_VANISH_TOL = 1e-8     # multiplicity: |H^(k)| below this counts as zero
MAX_MULTIPLICITY = 6

_FUNCS = ("sin", "cos", "tan", "sinh", "cosh", "tanh", "exp", "sqrt")
_NON_SMOOTH = ("abs", "sign", "floor", "ceil", "round", "min", "max")


class HParseError(ValueError):
    """Syntax or vocabulary error, with the source offset where it occurred."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class HDomainError(ValueError):
    """Evaluation requested outside [-1, 1]."""


class ZeroResolutionError(RuntimeError):
    """Two root candidates closer than the separation threshold."""


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class HAst:
    """Expression tree node.

    op is one of 'const', 'y', 'neg', 'add', 'sub', 'mul', 'div', 'pow',
    or a function name from the admitted set. 'const' stores its value in
    ``value``; 'pow' stores the non-negative integer exponent there.
    """

    op: str
    args: tuple["HAst", ...] = ()
    value: float | int | None = None


_ZERO = HAst("const", value=0.0)
_ONE = HAst("const", value=1.0)
_Y = HAst("y")


def _const(v: float) -> HAst:
    return HAst("const", value=float(v))


def _is_const(n: HAst, v: float | None = None) -> bool:
    return n.op == "const" and (v is None or n.value == v)


def _neg(a: HAst) -> HAst:
    if _is_const(a):
        return _const(-a.value)
    if a.op == "neg":
        return a.args[0]
    return HAst("neg", (a,))


def _add(a: HAst, b: HAst) -> HAst:
    if _is_const(a) and _is_const(b):
        return _const(a.value + b.value)
    if _is_const(a, 0.0):
        return b
    if _is_const(b, 0.0):
        return a
    return HAst("add", (a, b))


def _sub(a: HAst, b: HAst) -> HAst:
    if _is_const(a) and _is_const(b):
        return _const(a.value - b.value)
    if _is_const(b, 0.0):
        return a
    if _is_const(a, 0.0):
        return _neg(b)
    return HAst("sub", (a, b))


def _mul(a: HAst, b: HAst) -> HAst:
    if _is_const(a) and _is_const(b):
        return _const(a.value * b.value)
    if _is_const(a, 0.0) or _is_const(b, 0.0):
        return _ZERO
    if _is_const(a, 1.0):
        return b
    if _is_const(b, 1.0):
        return a
    return HAst("mul", (a, b))


def _div(a: HAst, b: HAst) -> HAst:
    if _is_const(a, 0.0):
        return _ZERO
    if _is_const(b, 1.0):
        return a
    if _is_const(a) and _is_const(b) and b.value != 0:
        return _const(a.value / b.value)
    return HAst("div", (a, b))


def _pow(a: HAst, n: int) -> HAst:
    if n < 0:
        raise ValueError("power exponents must be non-negative integers")
    if n == 0:
        return _ONE
    if n == 1:
        return a
    if _is_const(a):
        return _const(a.value**n)
    return HAst("pow", (a,), n)


def _func(name: str, a: HAst) -> HAst:
    return HAst(name, (a,))


# ---------------------------------------------------------------------------
# Parser


_TOKEN_OPS = "+-*/^()"


def _tokenize(source: str):
    tokens = []
    i, n = 0, len(source)
    while i < n:
        c = source[i]
        if c.isspace():
            i += 1
            continue
        if c in _TOKEN_OPS:
            tokens.append((c, c, i))
            i += 1
            continue
        if c.isdigit() or c == ".":
            j = i
            while j < n and (source[j].isdigit() or source[j] == "."):
                j += 1
            if j < n and source[j] in "eE":
                k = j + 1
                if k < n and source[k] in "+-":
                    k += 1
                if k < n and source[k].isdigit():
                    j = k
                    while j < n and source[j].isdigit():
                        j += 1
            text = source[i:j]
            try:
                float(text)
            except ValueError:
                raise HParseError(f"malformed number {text!r}", i) from None
            tokens.append(("num", text, i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            tokens.append(("name", source[i:j], i))
            i = j
            continue
        raise HParseError(f"unexpected character {c!r}", i)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    """Recursive descent over:

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := base ('^' uint)?
    base   := number | 'y' | func '(' expr ')' | '(' expr ')' | '-' base
    """

    def __init__(self, source: str):
        self.tokens = _tokenize(source)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str):
        tok = self.peek()
        if tok[0] != kind:
            raise HParseError(f"expected {what}, found {tok[1] or 'end of input'!r}", tok[2])
        return self.advance()

    def parse(self) -> HAst:
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise HParseError(f"unexpected trailing input {tok[1]!r}", tok[2])
        return node

    def expr(self) -> HAst:
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            rhs = self.term()
            node = _add(node, rhs) if op == "+" else _sub(node, rhs)
        return node

    def term(self) -> HAst:
        node = self.factor()
        while self.peek()[0] in ("*", "/"):
            op = self.advance()[0]
            rhs = self.factor()
            node = _mul(node, rhs) if op == "*" else _div(node, rhs)
        return node

    def factor(self) -> HAst:
        node = self.base()
        if self.peek()[0] == "^":
            self.advance()
            tok = self.peek()
            if tok[0] != "num" or not tok[1].isdigit():
                raise HParseError(
                    f"expected unsigned integer exponent, found {tok[1] or 'end of input'!r}",
                    tok[2],
                )
            self.advance()
            node = _pow(node, int(tok[1]))
        return node

    def base(self) -> HAst:
        tok = self.peek()
        kind = tok[0]
        if kind == "-":
            self.advance()
            return _neg(self.base())
        if kind == "num":
            self.advance()
            return _const(float(tok[1]))
        if kind == "(":
            self.advance()
            node = self.expr()
            self.expect(")", "')'")
            return node
        if kind == "name":
            self.advance()
            name = tok[1]
            if name == "y":
                return _Y
            if name in _FUNCS:
                self.expect("(", f"'(' after {name}")
                arg = self.expr()
                self.expect(")", "')'")
                return _func(name, arg)
            if name in _NON_SMOOTH:
                raise HParseError(
                    f"{name!r} is not C^1-smooth and is not admitted; "
                    f"allowed functions: {', '.join(_FUNCS)}",
                    tok[2],
                )
            raise HParseError(
                f"unknown name {name!r}; the only variable is 'y' and the "
                f"allowed functions are {', '.join(_FUNCS)}",
                tok[2],
            )
        raise HParseError(f"expected expression, found {tok[1] or 'end of input'!r}", tok[2])


# ---------------------------------------------------------------------------
# Serialization (round-trips structurally through the parser)

_PREC = {"add": 1, "sub": 1, "mul": 2, "div": 2}


def _atomic(n: HAst) -> bool:
    return n.op == "y" or n.op in _FUNCS or (_is_const(n) and n.value >= 0)


def to_source(node: HAst) -> str:
    op = node.op
    if op == "const":
        return repr(node.value)
    if op == "y":
        return "y"
    if op in _FUNCS:
        return f"{op}({to_source(node.args[0])})"
    if op == "neg":
        child = node.args[0]
        inner = to_source(child) if _atomic(child) else f"({to_source(child)})"
        return f"-{inner}"
    if op == "pow":
        base = node.args[0]
        inner = to_source(base) if _atomic(base) else f"({to_source(base)})"
        return f"{inner}^{node.value}"
    if op in _PREC:
        a, b = node.args
        sym = {"add": "+", "sub": "-", "mul": "*", "div": "/"}[op]
        lhs = to_source(a)
        if a.op in _PREC and _PREC[a.op] < _PREC[op]:
            lhs = f"({lhs})"
        rhs = to_source(b)
        # right operand needs parens at equal precedence: '-' and '/' are
        # left-associative in the grammar
        if b.op in _PREC and _PREC[b.op] <= _PREC[op]:
            rhs = f"({rhs})"
        if not (b.op in _PREC) and (b.op == "neg" or (_is_const(b) and b.value < 0)):
            rhs = f"({rhs})"
        return f"{lhs} {sym} {rhs}"
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# Differentiation and evaluation


def _diff(node: HAst) -> HAst:
    op = node.op
    if op == "const":
        return _ZERO
    if op == "y":
        return _ONE
    if op == "neg":
        return _neg(_diff(node.args[0]))
    if op == "add":
        return _add(_diff(node.args[0]), _diff(node.args[1]))
    if op == "sub":
        return _sub(_diff(node.args[0]), _diff(node.args[1]))
    if op == "mul":
        a, b = node.args
        return _add(_mul(_diff(a), b), _mul(a, _diff(b)))
    if op == "div":
        a, b = node.args
        num = _sub(_mul(_diff(a), b), _mul(a, _diff(b)))
        return _div(num, _pow(b, 2))
    if op == "pow":
        a = node.args[0]
        n = node.value
        return _mul(_mul(_const(n), _pow(a, n - 1)), _diff(a))
    a = node.args[0]
    da = _diff(a)
    if op == "sin":
        return _mul(_func("cos", a), da)
    if op == "cos":
        return _neg(_mul(_func("sin", a), da))
    if op == "tan":
        return _mul(_add(_ONE, _pow(_func("tan", a), 2)), da)
    if op == "sinh":
        return _mul(_func("cosh", a), da)
    if op == "cosh":
        return _mul(_func("sinh", a), da)
    if op == "tanh":
        return _mul(_sub(_ONE, _pow(_func("tanh", a), 2)), da)
    if op == "exp":
        return _mul(_func("exp", a), da)
    if op == "sqrt":
        return _div(da, _mul(_const(2.0), _func("sqrt", a)))
    raise ValueError(f"unknown op {op!r}")


def _to_python(node: HAst) -> str:
    op = node.op
    if op == "const":
        return repr(node.value)
    if op == "y":
        return "y"
    if op == "neg":
        return f"(-{_to_python(node.args[0])})"
    if op == "pow":
        return f"({_to_python(node.args[0])})**{node.value}"
    if op in _PREC:
        sym = {"add": "+", "sub": "-", "mul": "*", "div": "/"}[op]
        return f"({_to_python(node.args[0])}{sym}{_to_python(node.args[1])})"
    return f"_{op}({_to_python(node.args[0])})"


_MATH_ENV = {f"_{name}": getattr(math, name) for name in _FUNCS}


def _compile(node: HAst):
    """Compile an AST to a fast float->float callable; math-domain failures
    surface as NaN so callers can treat them uniformly."""
    raw = eval(f"lambda y: ({_to_python(node)})", dict(_MATH_ENV))  # noqa: S307

    def call(y: float) -> float:
        try:
            return raw(y)
        except (ValueError, OverflowError, ZeroDivisionError):
            return math.nan

    return call


class HFunction:
    """A parsed prescribed function H: [-1,1] -> R with its exact derivative.

    Immutable after construction (derivative and zero caches are filled
    lazily but deterministically); safe for concurrent read-only use.
    """

    def __init__(self, source: str, ast: HAst):
        self.source = source
        self.ast = ast
        self.d_ast = _diff(ast)
        self.domain = DOMAIN
        self.h = _compile(ast)
        self.dh = _compile(self.d_ast)
        self._deriv_asts = [ast, self.d_ast]
        self._deriv_fns = [self.h, self.dh]
        self._zeros: list[ZeroRecord] | None = None
        grid = np.linspace(-1.0, 1.0, FINITE_GRID)
        vals = [self.h(float(t)) for t in grid]
        if not all(math.isfinite(v) for v in vals):
            bad = next(t for t, v in zip(grid, vals) if not math.isfinite(v))
            raise ValueError(
                f"expression {source!r} is non-finite on [-1,1] (e.g. at y={bad:.6g})"
            )

    def __call__(self, y: float) -> float:
        return self.h(y)

    def __repr__(self):
        return f"HFunction({self.source!r})"

    def derivative_ast(self, order: int) -> HAst:
        while len(self._deriv_asts) <= order:
            self._deriv_asts.append(_diff(self._deriv_asts[-1]))
        return self._deriv_asts[order]

    def derivative_fn(self, order: int):
        while len(self._deriv_fns) <= order:
            self._deriv_fns.append(_compile(self.derivative_ast(len(self._deriv_fns))))
        return self._deriv_fns[order]


@dataclass(frozen=True)
class ZeroRecord:
    """A root of H in [-1,1].

    multiplicity is None when every symbolic derivative up to order 6
    vanishes at the root within tolerance ("multiplicity > 6, unresolved").
    sign_change mirrors multiplicity parity for resolved roots and falls
    back to a numeric two-sided sign probe otherwise.
    """

    y0: float
    multiplicity: int | None
    sign_change: bool


@dataclass(frozen=True)
class ClassReport:
    """Certificates for membership in the admissible function classes."""

    is_even: bool
    satisfies_h2r_inequality: bool
    inequality_witness: float | None
    inequality_margin: float | None  # min over [-1,1] of 2|H| - sqrt(1-y^2)
    zero_multiplicity_sum: int | None
    admissible_for: frozenset[int]
    requested_kappa: int

    @property
    def admissible(self) -> bool:
        return self.requested_kappa in self.admissible_for


# ---------------------------------------------------------------------------
# Operations


def parse_h(source: str) -> HFunction:
    """Parse an expression in the H grammar and attach its exact derivative."""
    if not isinstance(source, str):
        raise TypeError("source must be str")
    ast = _Parser(source).parse()
    return HFunction(source, ast)


def eval_h(f: HFunction, y: float, order: int = 0) -> float:
    """Evaluate H (order 0) or H' (order 1) at y in [-1, 1]."""
    if order not in (0, 1):
        raise ValueError("order must be 0 or 1")
    if not (-1.0 <= y <= 1.0):
        raise HDomainError(f"y={y!r} outside [-1, 1]")
    return f.h(y) if order == 0 else f.dh(y)


def _bisect(fn, a: float, b: float, fa: float, fb: float) -> float:
    # fa, fb have opposite signs
    for _ in range(120):
        m = 0.5 * (a + b)
        if b - a <= 2.0 * ROOT_XTOL:
            break
        fm = fn(m)
        if fm == 0.0:
            return m
        if (fa < 0.0) != (fm < 0.0):
            b, fb = m, fm
        else:
            a, fa = m, fm
    return 0.5 * (a + b)


def scan_bisect(fn, lo: float, hi: float, n: int = ZERO_GRID) -> list[float]:
    """All sign-change roots of a scalar callable on [lo, hi].

    Shared by zero finding, asymptote location and equilibrium solving:
    uniform sign scan on an n-point grid, bisection refinement to 1e-12.
    Grid points that evaluate exactly to zero are returned as roots.
    """
    ys = np.linspace(lo, hi, n)
    vals = [fn(float(t)) for t in ys]
    roots: list[float] = []
    for i in range(n - 1):
        v0, v1 = vals[i], vals[i + 1]
        if not (math.isfinite(v0) and math.isfinite(v1)):
            continue
        if v0 == 0.0:
            if not roots or abs(roots[-1] - ys[i]) > ROOT_XTOL:
                roots.append(float(ys[i]))
            continue
        if (v0 < 0.0) != (v1 < 0.0):
            roots.append(_bisect(fn, float(ys[i]), float(ys[i + 1]), v0, v1))
    if vals[-1] == 0.0:
        roots.append(float(ys[-1]))
    return roots


def _multiplicity_at(f: HFunction, r: float) -> int | None:
    for k in range(1, MAX_MULTIPLICITY + 1):
        if abs(f.derivative_fn(k)(r)) > DERIV_VANISH_TOL:
            return k
    return None


def _sign_change_at(f: HFunction, r: float, mult: int | None) -> bool:
    if mult is not None:
        return mult % 2 == 1
    step = min(1e-4, 0.5 * (1.0 - abs(r)) + 1e-12)
    lo = max(-1.0, r - step)
    hi = min(1.0, r + step)
    return f.h(lo) * f.h(hi) < 0.0


def find_zeros(f: HFunction) -> list[ZeroRecord]:
    """All roots of H in [-1, 1], with multiplicities, sorted ascending.

    Odd-multiplicity roots come from a sign scan of H; even-multiplicity
    roots are critical points of H where |H| vanishes. Candidate pairs
    closer than the separation threshold raise ZeroResolutionError.
    """
    candidates = list(scan_bisect(f.h, -1.0, 1.0))
    for r in scan_bisect(f.dh, -1.0, 1.0):
        if abs(f.h(r)) > ROOT_VALUE_TOL:
            continue
        # critical point with |H| ~ 0: either a genuine even-order root or a
        # pair of close simple roots the coarse grid stepped over; a local
        # fine scan (resolution ~2e-7) separates the two cases
        w = 1e-4
        local = scan_bisect(f.h, max(-1.0, r - w), min(1.0, r + w), n=1025)
        local = [q for q in local if all(abs(q - c) > 10.0 * ROOT_XTOL for c in candidates)]
        candidates.extend(local if local else [r])
    for endpoint in (-1.0, 1.0):
        if abs(f.h(endpoint)) <= ROOT_VALUE_TOL:
            candidates.append(endpoint)

    candidates.sort()
    merged: list[float] = []
    for r in candidates:
        if merged and abs(r - merged[-1]) <= 10.0 * ROOT_XTOL:
            continue
        merged.append(r)
    for a, b in zip(merged, merged[1:]):
        if b - a < ROOT_SEPARATION:
            raise ZeroResolutionError(
                f"root candidates at y={a:.12g} and y={b:.12g} are closer than "
                f"{ROOT_SEPARATION:g}; cannot resolve"
            )
    records = []
    for r in merged:
        if abs(f.h(r)) > ROOT_VALUE_TOL:
            continue
        mult = _multiplicity_at(f, r)
        records.append(ZeroRecord(r, mult, _sign_change_at(f, r, mult)))
    return records


def is_even(f: HFunction) -> bool:
    """Certify H(y) = H(-y) on a 1024-point grid at tolerance 1e-10."""
    ys = np.linspace(0.0, 1.0, EVEN_GRID)
    return all(abs(f.h(float(t)) - f.h(float(-t))) <= EVEN_TOL for t in ys)


def _minimize_inequality(f: HFunction) -> tuple[float, float]:
    """Global minimum of g(y) = 4 H(y)^2 - (1 - y^2) over [-1, 1].

    Grid scan plus golden-section refinement inside the bracketing cell.
    Returns (argmin, min g).
    """

    def g(t: float) -> float:
        v = f.h(t)
        return 4.0 * v * v - (1.0 - t * t)

    ys = np.linspace(-1.0, 1.0, ZERO_GRID)
    vals = np.array([g(float(t)) for t in ys])
    i = int(np.argmin(vals))
    lo = float(ys[max(0, i - 1)])
    hi = float(ys[min(len(ys) - 1, i + 1)])
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    gc, gd = g(c), g(d)
    for _ in range(80):
        if b - a < 1e-13:
            break
        if gc < gd:
            b, d, gd = d, c, gc
            c = b - invphi * (b - a)
            gc = g(c)
        else:
            a, c, gc = c, d, gd
            d = a + invphi * (b - a)
            gd = g(d)
    best = 0.5 * (a + b)
    if g(best) > vals[i]:
        best = float(ys[i])
    return best, g(best)


def class_membership(f: HFunction, kappa: int) -> ClassReport:
    """Full membership report for the admissible class at curvature sign kappa.

    The hyperbolic-base inequality 2|H(y)| > sqrt(1-y^2) is certified by
    globally minimizing 4H^2 - (1-y^2); the minimizer is returned as the
    witness (the point where the inequality is tightest, or fails).
    Negative results are data, not errors.
    """
    if kappa not in (-1, 1):
        raise ValueError("kappa must be -1 or +1")
    even = is_even(f)
    witness, gmin = _minimize_inequality(f)
    satisfied = gmin > 0.0
    margin = 2.0 * abs(f.h(witness)) - math.sqrt(max(0.0, 1.0 - witness * witness))
    try:
        zeros = find_zeros(f)
        if any(z.multiplicity is None for z in zeros):
            zsum = None
        else:
            zsum = sum(z.multiplicity for z in zeros)
    except ZeroResolutionError:
        zsum = None
    admissible = set()
    if even:
        admissible.add(1)
        if satisfied:
            admissible.add(-1)
    return ClassReport(
        is_even=even,
        satisfies_h2r_inequality=satisfied,
        inequality_witness=witness,
        inequality_margin=margin,
        zero_multiplicity_sum=zsum,
        admissible_for=frozenset(admissible),
        requested_kappa=kappa,
    )
