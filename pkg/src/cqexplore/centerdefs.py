"""Triangle-center definitions: a small formula language, its evaluator,
a registry keyed by Kimberling index, and two shape classifiers.

A definition gives the *first* coordinate ``f(a, b, c)`` of a center,
either in barycentrics or in trilinears::

    # comment
    5 = bary : a^2*(b^2+c^2) - (b^2-c^2)^2
    13 = tril : 1/(sin(A)/2 + sqrt(3)*cos(A)/2)

The other two coordinates come from cyclic substitution
``(a, b, c, A, B, C) -> (b, c, a, B, C, A)``.  ``S`` is twice the area
of the triangle and ``A``, ``B``, ``C`` are the angles in radians.

Expressions are compiled to straight-line Python that carries, next to
every value, a bound on the magnitude of the terms that produced it.
A coordinate whose value is tiny compared with that bound is the result
of exact cancellation (for example ``b - c`` on an isosceles triangle)
and is snapped to zero.
"""

from __future__ import annotations

import math
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Callable, Iterable, Optional

from .barycentric import AT_INFINITY, BaryCoords, normalize

FUNCTIONS = ("sqrt", "sin", "cos", "acos", "cbrt")
VARIABLES = ("a", "b", "c", "S", "A", "B", "C")
CONSTANTS = {"pi": math.pi}

CANCEL_EPS = 1e-10
NOISE_EPS = 1e-14
CENTER_FILE_ENV = "CQ_CENTER_FILE"


class ParseError(ValueError):
    def __init__(self, line: int, column: int, message: str) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.message = message


class _Undefined:
    def __repr__(self) -> str:
        return "Undefined"

    def __bool__(self) -> bool:
        return False


UNDEFINED = _Undefined()


# ---------------------------------------------------------------------------
# Parsing

@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Call:
    func: str
    arg: object


class _Lexer:
    def __init__(self, text: str, line: int, col0: int) -> None:
        self.text = text
        self.line = line
        self.col0 = col0
        self.tokens: list[tuple[str, str, int]] = []
        self._scan()
        self.pos = 0

    def _scan(self) -> None:
        s = self.text
        i = 0
        while i < len(s):
            ch = s[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                j = i
                while j < len(s) and s[j].isdigit():
                    j += 1
                if j < len(s) and s[j] == "." and j + 1 < len(s) and s[j + 1].isdigit():
                    j += 1
                    while j < len(s) and s[j].isdigit():
                        j += 1
                self.tokens.append(("num", s[i:j], i))
                i = j
            elif ch.isalpha():
                j = i
                while j < len(s) and s[j].isalnum():
                    j += 1
                self.tokens.append(("name", s[i:j], i))
                i = j
            elif ch in "+-*/^()":
                self.tokens.append((ch, ch, i))
                i += 1
            else:
                self.error(i, f"unexpected character {ch!r}")
        self.tokens.append(("end", "", len(s)))

    def error(self, offset: int, message: str):
        raise ParseError(self.line, self.col0 + offset + 1, message)

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok


def _parse_expr(lx: _Lexer):
    node = _parse_term(lx)
    while lx.peek()[0] in ("+", "-"):
        op = lx.take()[0]
        node = BinOp(op, node, _parse_term(lx))
    return node


def _parse_term(lx: _Lexer):
    node = _parse_unary(lx)
    while lx.peek()[0] in ("*", "/"):
        op = lx.take()[0]
        node = BinOp(op, node, _parse_unary(lx))
    return node


def _parse_unary(lx: _Lexer):
    kind = lx.peek()[0]
    if kind == "-":
        lx.take()
        return Neg(_parse_unary(lx))
    if kind == "+":
        lx.take()
        return _parse_unary(lx)
    return _parse_power(lx)


def _parse_power(lx: _Lexer):
    base = _parse_atom(lx)
    if lx.peek()[0] == "^":
        lx.take()
        # right associative; the exponent may carry a sign
        return BinOp("^", base, _parse_unary(lx))
    return base


def _parse_atom(lx: _Lexer):
    kind, text, off = lx.take()
    if kind == "num":
        return Num(Fraction(text))
    if kind == "name":
        if text in FUNCTIONS:
            if lx.peek()[0] != "(":
                lx.error(lx.peek()[2], f"expected '(' after {text}")
            lx.take()
            arg = _parse_expr(lx)
            _expect_close(lx, off)
            return Call(text, arg)
        if text in VARIABLES:
            return Var(text)
        if text in CONSTANTS:
            return Var(text)
        lx.error(off, f"unknown name {text!r}")
    if kind == "(":
        node = _parse_expr(lx)
        _expect_close(lx, off)
        return node
    if kind == "end":
        lx.error(off, "unexpected end of expression")
    lx.error(off, f"unexpected token {text!r}")


def _expect_close(lx: _Lexer, open_off: int) -> None:
    kind, text, off = lx.peek()
    if kind == ")":
        lx.take()
        return
    if kind == "end":
        lx.error(open_off, "unclosed parenthesis")
    lx.error(off, f"expected ')' but found {text!r}")


def parse_expression(text: str, line: int = 1, column: int = 1):
    lx = _Lexer(text, line, column - 1)
    node = _parse_expr(lx)
    kind, tok, off = lx.peek()
    if kind != "end":
        if kind == ")":
            lx.error(off, "unbalanced ')'")
        lx.error(off, f"unexpected token {tok!r}")
    return node


# ---------------------------------------------------------------------------
# Compilation

class _Cancelled(ArithmeticError):
    pass


def _div(x, mx, y, my):
    if y == 0.0 or abs(y) <= CANCEL_EPS * my:
        raise _Cancelled
    return x / y, mx / abs(y)


def _pow(x, mx, n):
    if n == int(n):
        k = int(n)
        if k < 0 and (x == 0.0 or abs(x) <= CANCEL_EPS * mx):
            raise _Cancelled
        return x ** k, mx ** k if k >= 0 else abs(x) ** k
    if x < 0.0:
        raise ValueError("fractional power of negative number")
    return x ** n, mx ** n


def _sqrt(x, mx):
    if x < 0.0:
        if -x <= CANCEL_EPS * mx:
            return 0.0, math.sqrt(mx)
        raise ValueError("sqrt of negative number")
    return math.sqrt(x), math.sqrt(mx)


def _acos(x, mx):
    if x > 1.0 or x < -1.0:
        if abs(x) - 1.0 <= CANCEL_EPS * max(mx, 1.0):
            x = max(-1.0, min(1.0, x))
        else:
            raise ValueError("acos out of range")
    return math.acos(x), math.pi


def _cbrt(x, mx):
    r = math.copysign(abs(x) ** (1.0 / 3.0), x)
    return r, mx ** (1.0 / 3.0)


_HELPERS = {
    "_div": _div, "_pow": _pow, "_sqrt": _sqrt, "_acos": _acos, "_cbrt": _cbrt,
    "sin": math.sin, "cos": math.cos, "pi": math.pi,
}


class _CodeGen:
    def __init__(self) -> None:
        self.lines: list[str] = []
        self.n = 0

    def fresh(self) -> tuple[str, str]:
        self.n += 1
        return f"v{self.n}", f"m{self.n}"

    def emit(self, node) -> tuple[str, str]:
        if isinstance(node, Num):
            v = float(node.value)
            return repr(v), repr(abs(v))
        if isinstance(node, Var):
            if node.name == "pi":
                return "pi", "pi"
            return node.name, f"abs({node.name})"
        v, m = self.fresh()
        if isinstance(node, Neg):
            x, mx = self.emit(node.arg)
            self.lines.append(f"{v} = -{x}; {m} = {mx}")
        elif isinstance(node, Call):
            x, mx = self.emit(node.arg)
            if node.func == "sin":
                self.lines.append(f"{v} = sin({x}); {m} = 1.0")
            elif node.func == "cos":
                self.lines.append(f"{v} = cos({x}); {m} = 1.0")
            else:
                self.lines.append(f"{v}, {m} = _{node.func}({x}, {mx})")
        elif isinstance(node, BinOp):
            x, mx = self.emit(node.left)
            if node.op == "^":
                if not _is_const(node.right):
                    raise ValueError("exponents must be numeric constants")
                n = _const_value(node.right)
                if n == int(n) and n >= 0:
                    self.lines.append(f"{v} = {x} ** {int(n)}; {m} = {mx} ** {int(n)}")
                else:
                    self.lines.append(f"{v}, {m} = _pow({x}, {mx}, {n!r})")
                return v, m
            y, my = self.emit(node.right)
            if node.op == "+":
                self.lines.append(f"{v} = {x} + {y}; {m} = {mx} + {my}")
            elif node.op == "-":
                self.lines.append(f"{v} = {x} - {y}; {m} = {mx} + {my}")
            elif node.op == "*":
                self.lines.append(f"{v} = {x} * {y}; {m} = {mx} * {my}")
            else:
                self.lines.append(f"{v}, {m} = _div({x}, {mx}, {y}, {my})")
        else:  # pragma: no cover
            raise TypeError(node)
        return v, m


def _is_const(node) -> bool:
    if isinstance(node, Num):
        return True
    if isinstance(node, Neg):
        return _is_const(node.arg)
    if isinstance(node, BinOp):
        return _is_const(node.left) and _is_const(node.right)
    return False


def _const_value(node) -> float:
    if isinstance(node, Num):
        return float(node.value)
    if isinstance(node, Neg):
        return -_const_value(node.arg)
    x, y = _const_value(node.left), _const_value(node.right)
    if node.op == "^":
        return x ** y
    return {"+": x + y, "-": x - y, "*": x * y, "/": x / y}[node.op]


def compile_expression(node) -> Callable:
    """Compile to ``f(a, b, c, S, A, B, C) -> (value, magnitude)``."""
    gen = _CodeGen()
    v, m = gen.emit(node)
    body = "\n    ".join(gen.lines) or "pass"
    src = f"def _f(a, b, c, S, A, B, C):\n    {body}\n    return {v}, {m}\n"
    ns = dict(_HELPERS)
    exec(compile(src, "<center>", "exec"), ns)
    return ns["_f"]


# ---------------------------------------------------------------------------
# Registry

@dataclass
class CenterDef:
    index: int
    kind: str  # "bary" or "tril"
    source: str
    expr: object = field(repr=False)
    _fn: Callable = field(repr=False, compare=False)


@dataclass
class CenterRegistry:
    defs: dict[int, CenterDef]
    known_at_infinity: frozenset[int] = frozenset()

    def __getitem__(self, index: int) -> CenterDef:
        return self.defs[index]

    def __contains__(self, index: int) -> bool:
        return index in self.defs

    def __len__(self) -> int:
        return len(self.defs)

    def indices(self) -> list[int]:
        return sorted(self.defs)


# Indices whose center lies on the line at infinity for every triangle.
ALWAYS_AT_INFINITY = frozenset(
    [30, *range(511, 546), 674, 680, 688, 690, 696, 698, 700, 702, 704, 706, 708, 710, 712, 714,
    716, 718, 720, 722, 724, 726, 730, 732, 734, 736, 740, 742, 744, 746, 752, 754, 758, 760, 766,
    768, 772, 776, 778, 780, 782, 784, 786, 788, 790, 792, 794, 796, 802, 804, 806, 808, 812, 814,
    816, 818, 824, 826, 830, 832, 834, 838, 888, 891, 900, 912, 916, 918, 924, 926, 928, 952, 971]
)


def parse_center_file(text: str) -> CenterRegistry:
    defs: dict[int, CenterDef] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        lead = len(raw) - len(raw.lstrip())
        eq = raw.find("=")
        if eq < 0:
            raise ParseError(lineno, lead + 1, "expected '='")
        idx_text = raw[:eq].strip()
        if not idx_text.isdigit() or int(idx_text) <= 0:
            raise ParseError(lineno, lead + 1, f"bad center index {idx_text!r}")
        colon = raw.find(":", eq)
        if colon < 0:
            raise ParseError(lineno, eq + 2, "expected ':' after coordinate kind")
        kind = raw[eq + 1:colon].strip()
        if kind not in ("bary", "tril"):
            raise ParseError(lineno, eq + 2, f"coordinate kind must be bary or tril, not {kind!r}")
        expr_text = raw[colon + 1:]
        if not expr_text.strip():
            raise ParseError(lineno, colon + 2, "empty expression")
        expr = parse_expression(expr_text, lineno, colon + 2)
        index = int(idx_text)
        if index in defs:
            raise ParseError(lineno, lead + 1, f"duplicate center index {index}")
        defs[index] = CenterDef(index, kind, expr_text.strip(), expr, compile_expression(expr))
    known = frozenset(i for i in defs if i in ALWAYS_AT_INFINITY)
    return CenterRegistry(defs, known)


def load_registry(path: Optional[str] = None) -> CenterRegistry:
    """Load the bundled definitions, or ``path`` / ``$CQ_CENTER_FILE``."""
    path = path or os.environ.get(CENTER_FILE_ENV)
    if path:
        with open(path, encoding="utf-8") as fh:
            return parse_center_file(fh.read())
    return _bundled()


_BUNDLED: Optional[CenterRegistry] = None


def _bundled() -> CenterRegistry:
    global _BUNDLED
    if _BUNDLED is None:
        text = resources.files("cqexplore").joinpath("data/centers.txt").read_text(encoding="utf-8")
        _BUNDLED = parse_center_file(text)
    return _BUNDLED


# ---------------------------------------------------------------------------
# Evaluation

def triangle_invariants(a: float, b: float, c: float, sign: int = 1) -> tuple[float, float, float, float]:
    """Return ``(S, A, B, C)``: twice the area (Heron) and the three angles.

    ``sign=-1`` describes a clockwise triangle: S and the angles change sign.
    """
    s = 0.5 * (a + b + c)
    prod = s * (s - a) * (s - b) * (s - c)
    S = 2.0 * math.sqrt(max(prod, 0.0))

    def angle(x, y, z):
        cosv = (y * y + z * z - x * x) / (2.0 * y * z)
        return math.acos(max(-1.0, min(1.0, cosv)))

    if sign < 0:
        return -S, -angle(a, b, c), -angle(b, c, a), -angle(c, a, b)
    return S, angle(a, b, c), angle(b, c, a), angle(c, a, b)


def raw_coordinates(center: CenterDef, a: float, b: float, c: float, sign: int = 1):
    """Unnormalized barycentrics with cancellation snapped to zero, or UNDEFINED."""
    S, A, B, C = triangle_invariants(a, b, c, sign)
    fn = center._fn
    try:
        rows = (fn(a, b, c, S, A, B, C), fn(b, c, a, S, B, C, A), fn(c, a, b, S, C, A, B))
    except (_Cancelled, ZeroDivisionError, ValueError, OverflowError):
        return UNDEFINED
    for v, m in rows:
        if not (math.isfinite(v) and math.isfinite(m)):
            return UNDEFINED
    out = [0.0 if abs(v) <= CANCEL_EPS * m else v for v, m in rows]
    if not any(out):
        # all three small: a common factor near zero, not cancellation,
        # unless the values are at rounding level
        out = [0.0 if abs(v) <= NOISE_EPS * m else v for v, m in rows]
        if not any(out):
            return UNDEFINED
    if center.kind == "tril":
        out = [v * side for v, side in zip(out, (a, b, c))]
    return BaryCoords(*out)


def eval_center(center: CenterDef, a: float, b: float, c: float, sign: int = 1):
    """Normalized barycentrics, ``AT_INFINITY`` or ``UNDEFINED``.

    ``sign`` is the orientation of the triangle; it only matters for
    definitions that use S or the angles in an odd way.
    """
    raw = raw_coordinates(center, a, b, c, sign)
    if raw is UNDEFINED:
        return UNDEFINED
    return normalize(raw)


# ---------------------------------------------------------------------------
# Classifiers

CLASSIFY_SAMPLES = 8
CLASSIFY_TOL = 1e-9


@dataclass(frozen=True)
class IsoscelesBehavior:
    kind: str  # AtApex | AtBaseMidpoint | AtInfinity | Other
    ratio: Optional[float] = None  # XM/AM when constant

    @property
    def constant(self) -> bool:
        return self.ratio is not None


@dataclass(frozen=True)
class RightTriangleBehavior:
    kind: str  # AtHypotenuseMidpoint | AtRightAngleVertex | OnMedian | NotOnMedian
    ratio: Optional[float] = None  # AM/AX when constant

    @property
    def constant(self) -> bool:
        return self.ratio is not None


def isosceles_samples(n: int = CLASSIFY_SAMPLES, seed: int = 8) -> list[tuple[float, float, float]]:
    rng = random.Random(seed)
    return [(rng.uniform(0.15, 1.9), 1.0, 1.0) for _ in range(n)]


def right_samples(n: int = CLASSIFY_SAMPLES, seed: int = 9) -> list[tuple[float, float, float]]:
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        b = 1.0
        c = rng.uniform(0.2, 0.95)
        out.append((math.hypot(b, c), b, c))
    return out


def _close(p: BaryCoords, q: Iterable[float], tol: float) -> bool:
    return all(abs(x - y) <= tol for x, y in zip(p, q))


def _constant(values: list[float], tol: float) -> Optional[float]:
    ref = values[0]
    if all(abs(v - ref) <= tol * max(1.0, abs(ref)) for v in values):
        return sum(values) / len(values)
    return None


def classify_isosceles_behavior(center: CenterDef, samples: int = CLASSIFY_SAMPLES,
                                tol: float = CLASSIFY_TOL) -> IsoscelesBehavior:
    pts = [eval_center(center, *abc) for abc in isosceles_samples(samples)]
    if all(p is AT_INFINITY for p in pts):
        return IsoscelesBehavior("AtInfinity")
    if any(p is AT_INFINITY or p is UNDEFINED for p in pts):
        return IsoscelesBehavior("Other")
    if all(_close(p, (1.0, 0.0, 0.0), tol) for p in pts):
        return IsoscelesBehavior("AtApex")
    if all(_close(p, (0.0, 0.5, 0.5), tol) for p in pts):
        return IsoscelesBehavior("AtBaseMidpoint")
    # normalized with v = w, so u / (u + 2v) is just u
    ratios = [p.u / (p.u + p.v + p.w) for p in pts]
    return IsoscelesBehavior("Other", _constant(ratios, tol))


def classify_right_triangle_ratio(center: CenterDef, samples: int = CLASSIFY_SAMPLES,
                                  tol: float = CLASSIFY_TOL) -> RightTriangleBehavior:
    pts = [eval_center(center, *abc) for abc in right_samples(samples)]
    if any(p is AT_INFINITY or p is UNDEFINED for p in pts):
        return RightTriangleBehavior("NotOnMedian")
    if not all(abs(p.v - p.w) <= tol for p in pts):
        return RightTriangleBehavior("NotOnMedian")
    if all(abs(p.u) <= tol for p in pts):
        return RightTriangleBehavior("AtHypotenuseMidpoint", 1.0)
    if all(abs(1.0 - p.u) <= tol for p in pts):
        return RightTriangleBehavior("AtRightAngleVertex")
    # X = u*A + (1 - u)*M, so AX = |1 - u| * AM
    if any(abs(1.0 - p.u) <= tol for p in pts):
        return RightTriangleBehavior("OnMedian")
    ratios = [1.0 / abs(1.0 - p.u) for p in pts]
    return RightTriangleBehavior("OnMedian", _constant(ratios, tol))
