"""Random convex quadrilaterals of each shape class, their validators and
the ancestry graph between classes.

Vertex labels follow the usual convention: sides ``a=AB, b=BC, c=CD,
d=DA``, diagonals ``p=AC, q=BD`` and angles ``A, B, C, D`` at the
vertices.  Conditions are checked in that fixed labeling, except for the
two trapezoid conditions which accept either pair of opposite sides as
the parallel pair (so that an isosceles trapezoid is a trapezoid).
Hjelmslev quadrilaterals carry their right angles at B and D.

Most generators place the diagonals first: the diagonal point sits at
the origin, ``A=(-s1,0)``, ``C=(s2,0)``, ``B=-t1*v``, ``D=t2*v`` where
``v`` makes angle ``phi`` with the x-axis.  Every convex quadrilateral
has such a frame and most shape conditions are simple relations between
the five numbers.  Tangential shapes come from an incircle and four
tangency angles; the rest use a one-dimensional root solve.
"""

from __future__ import annotations

import enum
import json
import math
import random
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Iterable, Optional, Sequence

from .geomcore import CartesianPoint, Circle, circle_circle_intersection, cross, diameter, distance

P = CartesianPoint


class ShapeClass(str, enum.Enum):
    general = "general"
    cyclic = "cyclic"
    tangential = "tangential"
    extangential = "extangential"
    parallelogram = "parallelogram"
    equalProdOpp = "equalProdOpp"
    equalProdAdj = "equalProdAdj"
    orthodiagonal = "orthodiagonal"
    equidiagonal = "equidiagonal"
    Pythagorean = "Pythagorean"
    kite = "kite"
    trapezoid = "trapezoid"
    rhombus = "rhombus"
    rectangle = "rectangle"
    Hjelmslev = "Hjelmslev"
    isoscelesTrapezoid = "isoscelesTrapezoid"
    APquad = "APquad"
    bicentric = "bicentric"
    exbicentric = "exbicentric"
    bicentricTrapezoid = "bicentricTrapezoid"
    cyclicOrthodiagonal = "cyclicOrthodiagonal"
    equidiagonalKite = "equidiagonalKite"
    equidiagonalOrthodiagonal = "equidiagonalOrthodiagonal"
    equidiagonalOrthodiagonalTrapezoid = "equidiagonalOrthodiagonalTrapezoid"
    harmonic = "harmonic"
    orthodiagonalTrapezoid = "orthodiagonalTrapezoid"
    tangentialTrapezoid = "tangentialTrapezoid"
    square = "square"

    def __str__(self) -> str:
        return self.value


SHAPES: tuple[ShapeClass, ...] = tuple(ShapeClass)

VALIDATE_TOL = 1e-9
# instances this close to satisfying an extra condition are re-sampled
SPECIAL_TOL = 1e-6
MIN_ANGLE = math.radians(10.0)
MAX_SIDE_RATIO = 10.0
MAX_ATTEMPTS = 10000


class GenerationError(RuntimeError):
    pass


def as_shape(shape) -> ShapeClass:
    try:
        return ShapeClass(str(shape))
    except ValueError:
        raise ValueError(f"unknown shape {shape!r}") from None


# ---------------------------------------------------------------------------
# Instances

def _angle_at(prev: P, v: P, nxt: P) -> float:
    ux, uy = prev.x - v.x, prev.y - v.y
    wx, wy = nxt.x - v.x, nxt.y - v.y
    return math.atan2(abs(ux * wy - uy * wx), ux * wx + uy * wy)


@dataclass(frozen=True)
class QuadInstance:
    vertices: tuple[P, P, P, P]
    shape: ShapeClass = ShapeClass.general
    seed: Optional[int] = None

    @classmethod
    def from_points(cls, pts: Iterable, shape="general", seed: Optional[int] = None) -> "QuadInstance":
        verts = tuple(P(float(x), float(y)) for x, y in pts)
        if len(verts) != 4:
            raise ValueError("a quadrilateral needs four vertices")
        return cls(verts, as_shape(shape), seed)  # type: ignore[arg-type]

    A = property(lambda self: self.vertices[0])
    B = property(lambda self: self.vertices[1])
    C = property(lambda self: self.vertices[2])
    D = property(lambda self: self.vertices[3])

    @cached_property
    def sides(self) -> tuple[float, float, float, float]:
        v = self.vertices
        return tuple(distance(v[i], v[(i + 1) % 4]) for i in range(4))  # type: ignore[return-value]

    a = property(lambda self: self.sides[0])
    b = property(lambda self: self.sides[1])
    c = property(lambda self: self.sides[2])
    d = property(lambda self: self.sides[3])
    p = property(lambda self: distance(self.vertices[0], self.vertices[2]))
    q = property(lambda self: distance(self.vertices[1], self.vertices[3]))

    @cached_property
    def angles(self) -> tuple[float, float, float, float]:
        """Interior angles at A, B, C, D in radians."""
        v = self.vertices
        return tuple(_angle_at(v[i - 1], v[i], v[(i + 1) % 4]) for i in range(4))  # type: ignore[return-value]

    @cached_property
    def diameter(self) -> float:
        return diameter(self.vertices)

    def is_convex(self) -> bool:
        """Strictly convex and counterclockwise."""
        v = self.vertices
        scale = self.diameter ** 2
        return all(cross(v[i], v[(i + 1) % 4], v[(i + 2) % 4]) > 1e-12 * scale for i in range(4))

    def to_json(self) -> str:
        return json.dumps({"shape": self.shape.value,
                           "vertices": [[pt.x, pt.y] for pt in self.vertices],
                           "seed": self.seed})

    @classmethod
    def from_json(cls, text: str) -> "QuadInstance":
        obj = json.loads(text)
        return cls.from_points(obj["vertices"], obj["shape"], obj.get("seed"))


# ---------------------------------------------------------------------------
# Conditions.  Each returns a relative residual; zero means exact.

def _rel(x: float, scale: float) -> float:
    return abs(x) / scale if scale > 0 else abs(x)


def _cyclic(q: QuadInstance) -> float:
    A, _, C, _ = q.angles
    return _rel(A + C - math.pi, math.pi)


def _tangential(q: QuadInstance) -> float:
    a, b, c, d = q.sides
    return _rel(a + c - b - d, a + b + c + d)


def _extangential(q: QuadInstance) -> float:
    a, b, c, d = q.sides
    return _rel(a + b - c - d, a + b + c + d)


def _parallelogram(q: QuadInstance) -> float:
    a, b, c, d = q.sides
    per = a + b + c + d
    return max(_rel(a - c, per), _rel(b - d, per))


def _equal_prod_opp(q: QuadInstance) -> float:
    a, b, c, d = q.sides
    return _rel(a * c - b * d, a * c + b * d)


def _equal_prod_adj(q: QuadInstance) -> float:
    a, b, c, d = q.sides
    return _rel(a * b - c * d, a * b + c * d)


def _orthodiagonal(q: QuadInstance) -> float:
    a, b, c, d = q.sides
    return _rel(a * a + c * c - b * b - d * d, a * a + b * b + c * c + d * d)


def _equidiagonal(q: QuadInstance) -> float:
    return _rel(q.p - q.q, q.p + q.q)


def _pythagorean(q: QuadInstance) -> float:
    a, b, c, d = q.sides
    return _rel(a * a + b * b - c * c - d * d, a * a + b * b + c * c + d * d)


def _kite(q: QuadInstance) -> float:
    a, b, c, d = q.sides
    per = a + b + c + d
    return max(_rel(a - b, per), _rel(c - d, per))


def _trapezoid(q: QuadInstance) -> float:
    A, B, _, D = q.angles
    return min(_rel(A + B - math.pi, math.pi), _rel(A + D - math.pi, math.pi))


def _rhombus(q: QuadInstance) -> float:
    s = q.sides
    per = sum(s)
    return max(_rel(x - s[0], per) for x in s)


def _rectangle(q: QuadInstance) -> float:
    return max(_rel(x - math.pi / 2, math.pi) for x in q.angles)


def _hjelmslev(q: QuadInstance) -> float:
    _, B, _, D = q.angles
    return max(_rel(B - math.pi / 2, math.pi), _rel(D - math.pi / 2, math.pi))


def _isosceles_trapezoid(q: QuadInstance) -> float:
    A, B, C, D = q.angles
    ab = max(_rel(A - B, math.pi), _rel(C - D, math.pi))
    ad = max(_rel(A - D, math.pi), _rel(B - C, math.pi))
    return min(ab, ad)


def _apquad(q: QuadInstance) -> float:
    a, b, c, d = q.sides
    per = a + b + c + d
    return max(_rel((d - c) - (c - b), per), _rel((c - b) - (b - a), per))


_BASE: dict[ShapeClass, Callable[[QuadInstance], float]] = {
    ShapeClass.cyclic: _cyclic,
    ShapeClass.tangential: _tangential,
    ShapeClass.extangential: _extangential,
    ShapeClass.parallelogram: _parallelogram,
    ShapeClass.equalProdOpp: _equal_prod_opp,
    ShapeClass.equalProdAdj: _equal_prod_adj,
    ShapeClass.orthodiagonal: _orthodiagonal,
    ShapeClass.equidiagonal: _equidiagonal,
    ShapeClass.Pythagorean: _pythagorean,
    ShapeClass.kite: _kite,
    ShapeClass.trapezoid: _trapezoid,
    ShapeClass.rhombus: _rhombus,
    ShapeClass.rectangle: _rectangle,
    ShapeClass.Hjelmslev: _hjelmslev,
    ShapeClass.isoscelesTrapezoid: _isosceles_trapezoid,
    ShapeClass.APquad: _apquad,
}

S = ShapeClass
# combination classes are conjunctions of table conditions
_COMBOS: dict[ShapeClass, tuple[ShapeClass, ...]] = {
    S.bicentric: (S.cyclic, S.tangential),
    S.exbicentric: (S.cyclic, S.extangential),
    S.bicentricTrapezoid: (S.cyclic, S.tangential, S.trapezoid),
    S.cyclicOrthodiagonal: (S.cyclic, S.orthodiagonal),
    S.equidiagonalKite: (S.equidiagonal, S.kite),
    S.equidiagonalOrthodiagonal: (S.equidiagonal, S.orthodiagonal),
    S.equidiagonalOrthodiagonalTrapezoid: (S.equidiagonal, S.orthodiagonal, S.trapezoid),
    S.harmonic: (S.cyclic, S.equalProdOpp),
    S.orthodiagonalTrapezoid: (S.orthodiagonal, S.trapezoid),
    S.tangentialTrapezoid: (S.tangential, S.trapezoid),
    S.square: (S.rectangle, S.rhombus),
}


def condition_residual(q: QuadInstance, shape) -> float:
    shape = as_shape(shape)
    if shape is S.general:
        return 0.0
    if shape in _COMBOS:
        return max(condition_residual(q, part) for part in _COMBOS[shape])
    return _BASE[shape](q)


def condition_residuals(q: QuadInstance) -> dict[ShapeClass, float]:
    """Residual of every shape condition, each base condition computed once."""
    out = {S.general: 0.0}
    out.update((shape, f(q)) for shape, f in _BASE.items())
    for shape, parts in _COMBOS.items():
        out[shape] = max(out[part] for part in parts)
    return out


def validate(q: QuadInstance, shape, tol: float = VALIDATE_TOL) -> bool:
    """True iff ``q`` is convex and satisfies the condition of ``shape``."""
    if not q.is_convex():
        return False
    return condition_residual(q, shape) <= tol


# ---------------------------------------------------------------------------
# Ancestry.  An edge (X, Y) means every Y satisfies the condition of X.
# Edges are the algebraic implications between the conditions above; the
# closure is what matters for suppression.

EDGES: tuple[tuple[ShapeClass, ShapeClass, str], ...] = (
    (S.general, S.cyclic, "root"),
    (S.general, S.tangential, "root"),
    (S.general, S.extangential, "root"),
    (S.general, S.equalProdOpp, "root"),
    (S.general, S.equalProdAdj, "root"),
    (S.general, S.orthodiagonal, "root"),
    (S.general, S.equidiagonal, "root"),
    (S.general, S.Pythagorean, "root"),
    (S.general, S.trapezoid, "root"),
    (S.general, S.APquad, "root"),
    (S.cyclic, S.Hjelmslev, "B+D=180"),
    (S.Pythagorean, S.Hjelmslev, "a^2+b^2 = AC^2 = c^2+d^2"),
    (S.trapezoid, S.parallelogram, "both pairs of opposite sides are parallel"),
    (S.extangential, S.parallelogram, "a=c, b=d gives a+b=c+d"),
    (S.Pythagorean, S.parallelogram, "a=c, b=d gives a^2+b^2=c^2+d^2"),
    (S.equalProdAdj, S.parallelogram, "a=c, b=d gives ab=cd"),
    (S.orthodiagonal, S.kite, "a=b, c=d gives a^2+c^2=b^2+d^2"),
    (S.tangential, S.kite, "a=b, c=d gives a+c=b+d"),
    (S.equalProdOpp, S.kite, "a=b, c=d gives ac=bd"),
    (S.kite, S.rhombus, "a=b=c=d"),
    (S.parallelogram, S.rhombus, "a=c, b=d"),
    (S.APquad, S.rhombus, "common difference zero"),
    (S.orthodiagonalTrapezoid, S.rhombus, "perpendicular diagonals, parallel sides"),
    (S.tangentialTrapezoid, S.rhombus, "a+c=b+d, parallel sides"),
    (S.parallelogram, S.rectangle, "opposite angles equal"),
    (S.isoscelesTrapezoid, S.rectangle, "A=B, C=D"),
    (S.Hjelmslev, S.rectangle, "all four angles are right"),
    (S.exbicentric, S.rectangle, "cyclic and a+b=c+d"),
    (S.trapezoid, S.isoscelesTrapezoid, "A=B, C=D gives A+D=180"),
    (S.cyclic, S.isoscelesTrapezoid, "A+C=180"),
    (S.equidiagonal, S.isoscelesTrapezoid, "mirror symmetric"),
    (S.cyclic, S.bicentric, "combination"),
    (S.tangential, S.bicentric, "combination"),
    (S.cyclic, S.exbicentric, "combination"),
    (S.extangential, S.exbicentric, "combination"),
    (S.bicentric, S.bicentricTrapezoid, "combination"),
    (S.tangentialTrapezoid, S.bicentricTrapezoid, "tangential and trapezoid"),
    (S.isoscelesTrapezoid, S.bicentricTrapezoid, "a cyclic trapezoid is isosceles"),
    (S.cyclic, S.cyclicOrthodiagonal, "combination"),
    (S.orthodiagonal, S.cyclicOrthodiagonal, "combination"),
    (S.kite, S.equidiagonalKite, "combination"),
    (S.equidiagonalOrthodiagonal, S.equidiagonalKite, "kites are orthodiagonal"),
    (S.equidiagonal, S.equidiagonalOrthodiagonal, "combination"),
    (S.orthodiagonal, S.equidiagonalOrthodiagonal, "combination"),
    (S.equidiagonalOrthodiagonal, S.equidiagonalOrthodiagonalTrapezoid, "combination"),
    (S.orthodiagonalTrapezoid, S.equidiagonalOrthodiagonalTrapezoid, "combination"),
    (S.isoscelesTrapezoid, S.equidiagonalOrthodiagonalTrapezoid, "an equidiagonal trapezoid is isosceles"),
    (S.cyclicOrthodiagonal, S.equidiagonalOrthodiagonalTrapezoid, "isosceles trapezoids are cyclic"),
    (S.cyclic, S.harmonic, "combination"),
    (S.equalProdOpp, S.harmonic, "combination"),
    (S.orthodiagonal, S.orthodiagonalTrapezoid, "combination"),
    (S.trapezoid, S.orthodiagonalTrapezoid, "combination"),
    (S.tangential, S.tangentialTrapezoid, "combination"),
    (S.trapezoid, S.tangentialTrapezoid, "combination"),
    (S.rectangle, S.square, "equiangular"),
    (S.rhombus, S.square, "equilateral"),
    (S.equidiagonalKite, S.square, "a=b, c=d, p=q"),
    (S.equidiagonalOrthodiagonalTrapezoid, S.square, "p=q, perpendicular, parallel sides"),
    (S.bicentricTrapezoid, S.square, "cyclic, tangential, parallel sides"),
    (S.harmonic, S.square, "cyclic and ac=bd"),
)


@lru_cache(maxsize=None)
def ancestors(shape) -> frozenset[ShapeClass]:
    """All shapes implied by ``shape``, excluding itself."""
    shape = as_shape(shape)
    out: set[ShapeClass] = set()
    stack = [shape]
    while stack:
        cur = stack.pop()
        for parent, child, _ in EDGES:
            if child is cur and parent not in out:
                out.add(parent)
                stack.append(parent)
    return frozenset(out)


def descendants(shape) -> frozenset[ShapeClass]:
    shape = as_shape(shape)
    return frozenset(s for s in SHAPES if shape in ancestors(s))


def is_a(shape, other) -> bool:
    """``shape`` is ``other`` or a descendant of it."""
    shape, other = as_shape(shape), as_shape(other)
    return shape is other or other in ancestors(shape)


# ---------------------------------------------------------------------------
# Constructions

def _frame(s1: float, s2: float, t1: float, t2: float, phi: float) -> list[P]:
    cx, cy = math.cos(phi), math.sin(phi)
    return [P(-s1, 0.0), P(-t1 * cx, -t1 * cy), P(s2, 0.0), P(t2 * cx, t2 * cy)]


def _tangent_quad(theta: Sequence[float]) -> list[P]:
    """Quadrilateral around the unit circle, tangent at angles ``theta``
    (sides AB, BC, CD, DA in counterclockwise order)."""
    pts = []
    for i in range(4):
        t0 = theta[i - 1]
        t1 = theta[i]
        if t1 < t0:
            t1 += 2 * math.pi
        half = 0.5 * (t1 - t0)
        if half >= math.pi / 2:
            raise _Reject
        r = 1.0 / math.cos(half)
        mid = t0 + half
        pts.append(P(r * math.cos(mid), r * math.sin(mid)))
    return pts


def _bisect(f: Callable[[float], float], lo: float, hi: float) -> float:
    flo = f(lo)
    if flo == 0.0:
        return lo
    if (flo > 0) == (f(hi) > 0):
        raise _Reject
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0 or hi - lo < 1e-15 * max(1.0, abs(mid)):
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _on_circle(t: float) -> P:
    return P(math.cos(t), math.sin(t))


class _Reject(Exception):
    pass


def _g_general(r: random.Random) -> list[P]:
    return _frame(r.uniform(0.3, 1.5), r.uniform(0.3, 1.5), r.uniform(0.3, 1.5),
                  r.uniform(0.3, 1.5), r.uniform(0.4, math.pi - 0.4))


def _g_cyclic(r: random.Random) -> list[P]:
    s1, s2, t1 = r.uniform(0.3, 1.5), r.uniform(0.3, 1.5), r.uniform(0.3, 1.5)
    return _frame(s1, s2, t1, s1 * s2 / t1, r.uniform(0.4, math.pi - 0.4))


def _g_tangential(r: random.Random) -> list[P]:
    gaps = [r.uniform(0.5, 2.6) for _ in range(4)]
    k = 2 * math.pi / sum(gaps)
    gaps = [g * k for g in gaps]
    t0 = r.uniform(0, 2 * math.pi)
    theta = [t0 + sum(gaps[:i]) for i in range(4)]
    return _tangent_quad(theta)


def _g_extangential(r: random.Random) -> list[P]:
    # B and D on one ellipse with foci A and C: a+b = c+d = major axis
    f = 1.0
    m = r.uniform(1.1, 2.5)
    n = math.sqrt(m * m - f * f)
    beta = r.uniform(math.pi + 0.2, 2 * math.pi - 0.2)
    delta = r.uniform(0.2, math.pi - 0.2)
    return [P(-f, 0.0), P(m * math.cos(beta), n * math.sin(beta)), P(f, 0.0),
            P(m * math.cos(delta), n * math.sin(delta))]


def _g_parallelogram(r: random.Random) -> list[P]:
    s, t = r.uniform(0.3, 1.5), r.uniform(0.3, 1.5)
    return _frame(s, s, t, t, r.uniform(0.4, math.pi - 0.4))


def _g_equal_prod_opp(r: random.Random) -> list[P]:
    # D on the Apollonius circle |DC| / |DA| = b / a
    A, B, C = P(-1.0, 0.0), P(r.uniform(-0.8, 0.8), -r.uniform(0.4, 1.5)), P(1.0, 0.0)
    lam = distance(B, C) / distance(A, B)
    if abs(1 - lam * lam) < 0.05:
        raise _Reject
    k = 1 - lam * lam
    center = P((C.x - lam * lam * A.x) / k, (C.y - lam * lam * A.y) / k)
    rad = lam * distance(C, A) / abs(k)
    t = r.uniform(0, 2 * math.pi)
    D = P(center.x + rad * math.cos(t), center.y + rad * math.sin(t))
    return [A, B, C, D]


def _g_equal_prod_adj(r: random.Random) -> list[P]:
    # slide D along a ray from the midpoint of AC until |CD||DA| = |AB||BC|
    A, B, C = P(-1.0, 0.0), P(r.uniform(-0.8, 0.8), -r.uniform(0.4, 1.5)), P(1.0, 0.0)
    target = distance(A, B) * distance(B, C)
    ang = math.pi / 2 + r.uniform(-0.6, 0.6)
    w = P(math.cos(ang), math.sin(ang))

    def f(t: float) -> float:
        D = P(t * w.x, t * w.y)
        return distance(C, D) * distance(D, A) - target

    t = _bisect(f, 0.0, 20.0)
    return [A, B, C, P(t * w.x, t * w.y)]


def _g_orthodiagonal(r: random.Random) -> list[P]:
    return _frame(r.uniform(0.3, 1.5), r.uniform(0.3, 1.5), r.uniform(0.3, 1.5),
                  r.uniform(0.3, 1.5), math.pi / 2)


def _g_equidiagonal(r: random.Random) -> list[P]:
    s1, s2, t1 = r.uniform(0.3, 1.5), r.uniform(0.3, 1.5), r.uniform(0.3, 1.5)
    return _frame(s1, s2, t1, s1 + s2 - t1, r.uniform(0.4, math.pi - 0.4))


def _g_pythagorean(r: random.Random) -> list[P]:
    # a^2+b^2 = c^2+d^2 iff B and D are equidistant from the midpoint of AC
    h, rho = 1.0, r.uniform(0.3, 2.5)
    beta = r.uniform(math.pi + 0.2, 2 * math.pi - 0.2)
    delta = r.uniform(0.2, math.pi - 0.2)
    return [P(-h, 0.0), P(rho * math.cos(beta), rho * math.sin(beta)), P(h, 0.0),
            P(rho * math.cos(delta), rho * math.sin(delta))]


def _g_kite(r: random.Random) -> list[P]:
    s = r.uniform(0.3, 1.5)
    return _frame(s, s, r.uniform(0.3, 1.5), r.uniform(0.3, 1.5), math.pi / 2)


def _g_trapezoid(r: random.Random) -> list[P]:
    s1, t1, k = r.uniform(0.3, 1.5), r.uniform(0.3, 1.5), r.uniform(0.3, 3.0)
    return _frame(s1, k * s1, t1, k * t1, r.uniform(0.4, math.pi - 0.4))


def _g_rhombus(r: random.Random) -> list[P]:
    s, t = r.uniform(0.3, 1.5), r.uniform(0.3, 1.5)
    return _frame(s, s, t, t, math.pi / 2)


def _g_rectangle(r: random.Random) -> list[P]:
    s = r.uniform(0.3, 1.5)
    return _frame(s, s, s, s, r.uniform(0.4, math.pi - 0.4))


def _g_hjelmslev(r: random.Random) -> list[P]:
    # B and D on the circle with diameter AC: right angles at B and D
    return [P(-1.0, 0.0), _on_circle(r.uniform(3.4, 6.0)), P(1.0, 0.0), _on_circle(r.uniform(0.3, 2.8))]


def _g_isosceles_trapezoid(r: random.Random) -> list[P]:
    s, k = r.uniform(0.3, 1.5), r.uniform(0.3, 3.0)
    return _frame(s, k * s, s, k * s, r.uniform(0.4, math.pi - 0.4))


def _g_apquad(r: random.Random) -> list[P]:
    a = r.uniform(0.5, 1.0)
    step = r.choice((-1, 1)) * r.uniform(0.05, 0.3)
    b, c, d = a + step, a + 2 * step, a + 3 * step
    if min(a, b, c, d) <= 0.1:
        raise _Reject
    alpha = r.uniform(0.5, math.pi - 0.5)
    A, B, D = P(0.0, 0.0), P(a, 0.0), P(d * math.cos(alpha), d * math.sin(alpha))
    hits = circle_circle_intersection(Circle(B, b), Circle(D, c))
    # C lies on the far side of BD from A
    hits = [h for h in hits if cross(B, D, h) < 0]
    if not hits:
        raise _Reject
    return [A, B, hits[0], D]


def _g_bicentric(r: random.Random) -> list[P]:
    # opposite tangency chords perpendicular: g1 + g3 = g2 + g4 = pi
    g1, g2 = r.uniform(0.5, 2.6), r.uniform(0.5, 2.6)
    gaps = [g1, g2, math.pi - g1, math.pi - g2]
    t0 = r.uniform(0, 2 * math.pi)
    return _tangent_quad([t0 + sum(gaps[:i]) for i in range(4)])


def _solve_on_arc(lo: float, hi: float, f: Callable[[P], float]) -> P:
    t = _bisect(lambda s: f(_on_circle(s)), lo, hi)
    return _on_circle(t)


def _g_exbicentric(r: random.Random) -> list[P]:
    # D on the arc CA with |CD| + |DA| = |AB| + |BC|
    ta = r.uniform(2.6, 3.6)
    tc = r.uniform(-0.5, 0.5)
    A, C = _on_circle(ta), _on_circle(tc)
    B = _on_circle(r.uniform(ta + 0.3, tc + 2 * math.pi - 0.3))
    target = distance(A, B) + distance(B, C)
    mid = 0.5 * (tc + ta)
    lo, hi = (tc, mid) if r.random() < 0.5 else (mid, ta)
    D = _solve_on_arc(lo, hi, lambda X: distance(C, X) + distance(X, A) - target)
    return [A, B, C, D]


def _g_bicentric_trapezoid(r: random.Random) -> list[P]:
    g1 = r.uniform(0.5, 2.6)
    g2 = math.pi - g1
    return _tangent_quad([-math.pi / 2, -math.pi / 2 + g1, math.pi / 2, math.pi / 2 + g2])


def _g_cyclic_orthodiagonal(r: random.Random) -> list[P]:
    s1, s2, t1 = r.uniform(0.3, 1.5), r.uniform(0.3, 1.5), r.uniform(0.3, 1.5)
    return _frame(s1, s2, t1, s1 * s2 / t1, math.pi / 2)


def _g_equidiagonal_kite(r: random.Random) -> list[P]:
    s = r.uniform(0.4, 1.5)
    t1 = r.uniform(0.2, 1.8) * s
    return _frame(s, s, t1, 2 * s - t1, math.pi / 2)


def _g_equi_ortho(r: random.Random) -> list[P]:
    s1, s2, t1 = r.uniform(0.3, 1.5), r.uniform(0.3, 1.5), r.uniform(0.3, 1.5)
    return _frame(s1, s2, t1, s1 + s2 - t1, math.pi / 2)


def _g_equi_ortho_trapezoid(r: random.Random) -> list[P]:
    s, k = r.uniform(0.3, 1.5), r.uniform(0.3, 3.0)
    return _frame(s, k * s, s, k * s, math.pi / 2)


def _g_harmonic(r: random.Random) -> list[P]:
    # D on the arc CA with |CD| / |DA| = |BC| / |AB|
    ta = r.uniform(2.6, 3.6)
    tc = r.uniform(-0.5, 0.5)
    A, C = _on_circle(ta), _on_circle(tc)
    B = _on_circle(r.uniform(ta + 0.3, tc + 2 * math.pi - 0.3))
    lam = distance(B, C) / distance(A, B)
    D = _solve_on_arc(tc, ta, lambda X: distance(C, X) - lam * distance(X, A))
    return [A, B, C, D]


def _g_ortho_trapezoid(r: random.Random) -> list[P]:
    s1, t1, k = r.uniform(0.3, 1.5), r.uniform(0.3, 1.5), r.uniform(0.3, 3.0)
    return _frame(s1, k * s1, t1, k * t1, math.pi / 2)


def _g_tangential_trapezoid(r: random.Random) -> list[P]:
    g1, g3 = r.uniform(0.5, 2.6), r.uniform(0.5, 2.6)
    return _tangent_quad([-math.pi / 2, -math.pi / 2 + g1, math.pi / 2, math.pi / 2 + g3])


def _g_square(r: random.Random) -> list[P]:
    s = r.uniform(0.3, 1.5)
    return _frame(s, s, s, s, math.pi / 2)


_GENERATORS: dict[ShapeClass, Callable[[random.Random], list[P]]] = {
    S.general: _g_general,
    S.cyclic: _g_cyclic,
    S.tangential: _g_tangential,
    S.extangential: _g_extangential,
    S.parallelogram: _g_parallelogram,
    S.equalProdOpp: _g_equal_prod_opp,
    S.equalProdAdj: _g_equal_prod_adj,
    S.orthodiagonal: _g_orthodiagonal,
    S.equidiagonal: _g_equidiagonal,
    S.Pythagorean: _g_pythagorean,
    S.kite: _g_kite,
    S.trapezoid: _g_trapezoid,
    S.rhombus: _g_rhombus,
    S.rectangle: _g_rectangle,
    S.Hjelmslev: _g_hjelmslev,
    S.isoscelesTrapezoid: _g_isosceles_trapezoid,
    S.APquad: _g_apquad,
    S.bicentric: _g_bicentric,
    S.exbicentric: _g_exbicentric,
    S.bicentricTrapezoid: _g_bicentric_trapezoid,
    S.cyclicOrthodiagonal: _g_cyclic_orthodiagonal,
    S.equidiagonalKite: _g_equidiagonal_kite,
    S.equidiagonalOrthodiagonal: _g_equi_ortho,
    S.equidiagonalOrthodiagonalTrapezoid: _g_equi_ortho_trapezoid,
    S.harmonic: _g_harmonic,
    S.orthodiagonalTrapezoid: _g_ortho_trapezoid,
    S.tangentialTrapezoid: _g_tangential_trapezoid,
    S.square: _g_square,
}


def _well_conditioned(q: QuadInstance) -> bool:
    if min(q.angles) < MIN_ANGLE:
        return False
    s = q.sides
    return max(s) <= MAX_SIDE_RATIO * min(s)


def _place(pts: list[P], r: random.Random) -> list[P]:
    """Random rotation, scale (diameter in [0.5, 4]) and translation."""
    cx = sum(p.x for p in pts) / 4
    cy = sum(p.y for p in pts) / 4
    k = r.uniform(0.5, 4.0) / diameter(pts)
    th = r.uniform(0, 2 * math.pi)
    co, si = math.cos(th), math.sin(th)
    ox, oy = r.uniform(-1, 1), r.uniform(-1, 1)
    out = []
    for p in pts:
        x, y = k * (p.x - cx), k * (p.y - cy)
        out.append(P(co * x - si * y + ox, si * x + co * y + oy))
    return out


def generate(shape, rng_seed: int) -> QuadInstance:
    """A random convex, counterclockwise instance of ``shape``.

    Deterministic in ``(shape, rng_seed)``.  Instances that are badly
    conditioned or that happen to satisfy a condition the shape does not
    imply are rejected and re-drawn.
    """
    shape = as_shape(shape)
    r = random.Random(f"quadgen:{shape.value}:{rng_seed}")
    gen = _GENERATORS[shape]
    implied = ancestors(shape) | {shape}
    extras = [s for s in SHAPES if s not in implied]
    for _ in range(MAX_ATTEMPTS):
        try:
            pts = gen(r)
        except _Reject:
            continue
        q = QuadInstance(tuple(_place(pts, r)), shape, rng_seed)  # type: ignore[arg-type]
        if not q.is_convex() or not _well_conditioned(q):
            continue
        res = condition_residuals(q)
        if not all(res[s] <= VALIDATE_TOL for s in implied):
            continue
        if any(res[s] <= SPECIAL_TOL for s in extras):
            continue
        return q
    raise GenerationError(f"no acceptable {shape.value} instance after {MAX_ATTEMPTS} attempts")
