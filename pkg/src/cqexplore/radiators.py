"""Radiator points of a quadrilateral.

Each construction returns a :class:`RadiatorResult` with the point, an
interior flag and a residual measuring how well the overdetermined
definition is satisfied (for instance the distance from a Poncelet
candidate to the two nine-point circles not used to find it).  Radiators
that only exist for some shapes return ``NOT_APPLICABLE`` otherwise.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass
from typing import Callable, Optional, Union

from .geomcore import (
    COLLINEAR,
    PARALLEL,
    CartesianPoint,
    Circle,
    circle_circle_intersection,
    circle_through,
    cross,
    distance,
    line_intersection,
    line_through,
    midpoint,
    perpendicular_through,
    point_line_distance,
)
from .quadgen import QuadInstance, ShapeClass, as_shape, is_a, validate

P = CartesianPoint

RESIDUAL_TOL = 1e-7
PARALLEL_ANGLE_TOL = 1e-9
SIDELINE_TOL = 1e-9


class RadiatorKind(str, enum.Enum):
    ArbitraryPoint = "ArbitraryPoint"
    DiagonalPoint = "DiagonalPoint"
    PonceletPoint = "PonceletPoint"
    SteinerPoint = "SteinerPoint"
    Circumcenter = "Circumcenter"
    Incenter = "Incenter"
    Anticenter = "Anticenter"
    Orthocenter = "Orthocenter"
    VertexCentroid = "VertexCentroid"
    ThirdDiagonalMidpoint = "ThirdDiagonalMidpoint"

    def __str__(self) -> str:
        return self.value


RADIATORS: tuple[RadiatorKind, ...] = tuple(RadiatorKind)


def as_radiator(kind) -> RadiatorKind:
    try:
        return RadiatorKind(str(kind))
    except ValueError:
        raise ValueError(f"unknown radiator {kind!r}") from None


class _NotApplicable:
    def __repr__(self) -> str:
        return "NotApplicable"

    def __bool__(self) -> bool:
        return False


NOT_APPLICABLE = _NotApplicable()


class ConstructionError(RuntimeError):
    pass


@dataclass(frozen=True)
class RadiatorResult:
    point: P
    inside: bool
    residual: float


def inside(q: QuadInstance, pt: P) -> bool:
    v = q.vertices
    return all(cross(v[i], v[(i + 1) % 4], pt) > 0 for i in range(4))


def sidelines(q: QuadInstance):
    v = q.vertices
    return [line_through(v[i], v[(i + 1) % 4]) for i in range(4)]


def off_sidelines(q: QuadInstance, pt: P, tol: float = SIDELINE_TOL) -> bool:
    """True when ``pt`` is farther than ``tol * diameter`` from every sideline."""
    lim = tol * q.diameter
    return all(point_line_distance(pt, l) > lim for l in sidelines(q))


def _result(q: QuadInstance, pt: P, residual: float) -> RadiatorResult:
    if residual > RESIDUAL_TOL * q.diameter:
        raise ConstructionError(f"residual {residual:.3g} exceeds tolerance")
    return RadiatorResult(pt, inside(q, pt), residual)


def _mean(*pts: P) -> P:
    n = len(pts)
    return P(sum(p.x for p in pts) / n, sum(p.y for p in pts) / n)


def _off_circle(c: Circle, pt: P) -> float:
    return abs(distance(c.center, pt) - c.radius)


def _common_point(q: QuadInstance, circles: list[Circle]) -> RadiatorResult:
    """The point shared by four circles: intersect the first two and keep the
    candidate closest to the other two."""
    cands = circle_circle_intersection(circles[0], circles[1])
    if not cands:
        raise ConstructionError("defining circles do not meet")
    best = min(cands, key=lambda pt: max(_off_circle(c, pt) for c in circles[2:]))
    res = max(_off_circle(c, best) for c in circles)
    return _result(q, best, res)


# ---------------------------------------------------------------------------

def diagonal_point(q: QuadInstance) -> RadiatorResult:
    A, B, C, D = q.vertices
    pt = line_intersection(line_through(A, C), line_through(B, D))
    if pt is PARALLEL:
        raise ConstructionError("diagonals are parallel; quadrilateral is not convex")
    return RadiatorResult(pt, inside(q, pt), 0.0)


def nine_point_circle(p1: P, p2: P, p3: P) -> Circle:
    c = circle_through(midpoint(p1, p2), midpoint(p2, p3), midpoint(p3, p1))
    if c is COLLINEAR:
        raise ConstructionError("degenerate component triangle")
    return c


def poncelet_point(q: QuadInstance) -> RadiatorResult:
    A, B, C, D = q.vertices
    circles = [nine_point_circle(B, C, D), nine_point_circle(A, C, D),
               nine_point_circle(A, B, D), nine_point_circle(A, B, C)]
    return _common_point(q, circles)


def midray_circle(v: P, others: list[P]) -> Circle:
    c = circle_through(*(midpoint(v, o) for o in others))
    if c is COLLINEAR:
        raise ConstructionError("degenerate midray circle")
    return c


def steiner_point(q: QuadInstance) -> RadiatorResult:
    v = list(q.vertices)
    circles = [midray_circle(v[i], v[:i] + v[i + 1:]) for i in range(4)]
    return _common_point(q, circles)


def circumcenter(q: QuadInstance) -> Union[RadiatorResult, _NotApplicable]:
    if not validate(q, ShapeClass.cyclic):
        return NOT_APPLICABLE
    A, B, C, D = q.vertices
    c = circle_through(A, B, C)
    return _result(q, c.center, _off_circle(c, D))


def _bisector(v: P, prev: P, nxt: P):
    u1 = prev - v
    u2 = nxt - v
    n1, n2 = math.hypot(*u1), math.hypot(*u2)
    w = P(u1.x / n1 + u2.x / n2, u1.y / n1 + u2.y / n2)
    return line_through(v, v + w)


def incenter(q: QuadInstance) -> Union[RadiatorResult, _NotApplicable]:
    if not validate(q, ShapeClass.tangential):
        return NOT_APPLICABLE
    A, B, C, D = q.vertices
    pt = line_intersection(_bisector(A, D, B), _bisector(B, A, C))
    if pt is PARALLEL:
        raise ConstructionError("angle bisectors are parallel")
    dists = [point_line_distance(pt, l) for l in sidelines(q)]
    return _result(q, pt, max(dists) - min(dists))


def maltitude(q: QuadInstance, i: int):
    """Line through the midpoint of side i perpendicular to the opposite side."""
    v = q.vertices
    m = midpoint(v[i], v[(i + 1) % 4])
    opposite = line_through(v[(i + 2) % 4], v[(i + 3) % 4])
    return perpendicular_through(m, opposite)


def _concurrence(q: QuadInstance, lines) -> RadiatorResult:
    pt = line_intersection(lines[0], lines[1])
    if pt is PARALLEL:
        raise ConstructionError("defining lines are parallel")
    res = max(point_line_distance(pt, l) for l in lines)
    return _result(q, pt, res)


def anticenter(q: QuadInstance) -> Union[RadiatorResult, _NotApplicable]:
    if not validate(q, ShapeClass.cyclic):
        return NOT_APPLICABLE
    return _concurrence(q, [maltitude(q, i) for i in range(4)])


def triangle_orthocenter(p1: P, p2: P, p3: P) -> P:
    h1 = perpendicular_through(p1, line_through(p2, p3))
    h2 = perpendicular_through(p2, line_through(p3, p1))
    pt = line_intersection(h1, h2)
    if pt is PARALLEL:
        raise ConstructionError("degenerate component triangle")
    return pt


def quad_orthocenter(q: QuadInstance) -> Union[RadiatorResult, _NotApplicable]:
    if not validate(q, ShapeClass.cyclic):
        return NOT_APPLICABLE
    v = q.vertices
    lines = []
    for i in range(4):
        h = triangle_orthocenter(v[(i + 1) % 4], v[(i + 2) % 4], v[(i + 3) % 4])
        lines.append(line_through(v[i], h))
    return _concurrence(q, lines)


def vertex_centroid(q: QuadInstance) -> RadiatorResult:
    A, B, C, D = q.vertices
    g = _mean(A, B, C, D)
    # the centroid bisects both bimedians
    m1 = midpoint(midpoint(A, B), midpoint(C, D))
    m2 = midpoint(midpoint(B, C), midpoint(D, A))
    res = max(distance(g, m1), distance(g, m2))
    return _result(q, g, res)


def _parallel(p1: P, p2: P, p3: P, p4: P) -> bool:
    u, w = p2 - p1, p4 - p3
    s = abs(u.x * w.y - u.y * w.x) / (math.hypot(*u) * math.hypot(*w))
    return s < PARALLEL_ANGLE_TOL


def third_diagonal_midpoint(q: QuadInstance) -> Union[RadiatorResult, _NotApplicable]:
    A, B, C, D = q.vertices
    if _parallel(A, B, C, D) or _parallel(B, C, D, A):
        return NOT_APPLICABLE
    p = line_intersection(line_through(A, B), line_through(C, D))
    r = line_intersection(line_through(B, C), line_through(D, A))
    return RadiatorResult(midpoint(p, r), inside(q, midpoint(p, r)), 0.0)


def arbitrary_point(q: QuadInstance, rng: random.Random) -> RadiatorResult:
    """A random interior point kept away from the sides.

    Weights are bounded below so radial triangles stay well shaped.
    """
    for _ in range(1000):
        w = [0.15 + rng.random() for _ in range(4)]
        s = sum(w)
        pt = P(sum(wi * v.x for wi, v in zip(w, q.vertices)) / s,
               sum(wi * v.y for wi, v in zip(w, q.vertices)) / s)
        if off_sidelines(q, pt):
            return RadiatorResult(pt, inside(q, pt), 0.0)
    raise ConstructionError("could not place an arbitrary point")


_BUILDERS: dict[RadiatorKind, Callable] = {
    RadiatorKind.DiagonalPoint: diagonal_point,
    RadiatorKind.PonceletPoint: poncelet_point,
    RadiatorKind.SteinerPoint: steiner_point,
    RadiatorKind.Circumcenter: circumcenter,
    RadiatorKind.Incenter: incenter,
    RadiatorKind.Anticenter: anticenter,
    RadiatorKind.Orthocenter: quad_orthocenter,
    RadiatorKind.VertexCentroid: vertex_centroid,
    RadiatorKind.ThirdDiagonalMidpoint: third_diagonal_midpoint,
}


def construct(kind, q: QuadInstance, rng: Optional[random.Random] = None):
    """Build radiator ``kind`` for ``q``; ``rng`` is needed for ArbitraryPoint."""
    kind = as_radiator(kind)
    if kind is RadiatorKind.ArbitraryPoint:
        if rng is None:
            raise ValueError("ArbitraryPoint needs a random stream")
        return arbitrary_point(q, rng)
    return _BUILDERS[kind](q)


# Shapes a radiator needs; None means every convex quadrilateral.
REQUIRES: dict[RadiatorKind, Optional[ShapeClass]] = {
    RadiatorKind.Circumcenter: ShapeClass.cyclic,
    RadiatorKind.Anticenter: ShapeClass.cyclic,
    RadiatorKind.Orthocenter: ShapeClass.cyclic,
    RadiatorKind.Incenter: ShapeClass.tangential,
}


def applicable(kind, shape) -> bool:
    """Whether ``kind`` exists on every instance of ``shape``."""
    kind, shape = as_radiator(kind), as_shape(shape)
    if kind is RadiatorKind.ThirdDiagonalMidpoint:
        return not is_a(shape, ShapeClass.trapezoid)
    need = REQUIRES.get(kind)
    return need is None or is_a(shape, need)


@dataclass(frozen=True)
class Coincidence:
    radiator: RadiatorKind
    shape: ShapeClass
    same_as: RadiatorKind
    note: str


R = RadiatorKind
S = ShapeClass

# On ``shape`` and all its descendants ``radiator`` is the same point as
# ``same_as``.  The explorer drops results for ``radiator`` there.
COINCIDENCES: tuple[Coincidence, ...] = (
    Coincidence(R.PonceletPoint, S.parallelogram, R.DiagonalPoint, "Poncelet point of a parallelogram"),
    Coincidence(R.PonceletPoint, S.orthodiagonal, R.DiagonalPoint, "Poncelet point of an orthodiagonal quadrilateral"),
    Coincidence(R.SteinerPoint, S.parallelogram, R.DiagonalPoint, "Steiner point of a parallelogram"),
    Coincidence(R.SteinerPoint, S.cyclic, R.Circumcenter, "Steiner point of a cyclic quadrilateral"),
    Coincidence(R.Circumcenter, S.rectangle, R.DiagonalPoint, "circumcenter of a rectangle"),
    Coincidence(R.Anticenter, S.cyclic, R.PonceletPoint, "anticenter of a cyclic quadrilateral"),
    Coincidence(R.Anticenter, S.cyclicOrthodiagonal, R.DiagonalPoint, "anticenter of a cyclic orthodiagonal quadrilateral"),
    Coincidence(R.Orthocenter, S.rectangle, R.DiagonalPoint, "orthocenter of a rectangle"),
    # the altitude from A passes through (A+B+C+D)/2 - O, the anticenter
    Coincidence(R.Orthocenter, S.cyclic, R.Anticenter, "orthocenter of a cyclic quadrilateral"),
    Coincidence(R.Incenter, S.rhombus, R.DiagonalPoint, "incenter of a rhombus"),
    Coincidence(R.Incenter, S.bicentricTrapezoid, R.VertexCentroid, "incenter of a bicentric trapezoid"),
    Coincidence(R.VertexCentroid, S.parallelogram, R.DiagonalPoint, "centroid of a parallelogram"),
)


def coincidence_for(kind, shape) -> Optional[Coincidence]:
    """The first coincidence rule covering ``(kind, shape)``, if any."""
    kind, shape = as_radiator(kind), as_shape(shape)
    for rule in COINCIDENCES:
        if rule.radiator is kind and is_a(shape, rule.shape):
            return rule
    return None
