"""Cartesian primitives: points, lines, circles and the handful of
intersection and projection routines the constructions need.

Everything is plain double precision.  Degenerate configurations are
reported with sentinel values (``PARALLEL``, ``COLLINEAR``) rather than
exceptions so callers can branch on them cheaply.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence


class CartesianPoint(NamedTuple):
    x: float
    y: float

    def __add__(self, other):  # type: ignore[override]
        return CartesianPoint(self.x + other.x, self.y + other.y)

    def __sub__(self, other):
        return CartesianPoint(self.x - other.x, self.y - other.y)

    def scale(self, k: float) -> "CartesianPoint":
        return CartesianPoint(k * self.x, k * self.y)


class Circle(NamedTuple):
    center: CartesianPoint
    radius: float


class LineCart(NamedTuple):
    """Line ``A*x + B*y + C = 0`` with ``A**2 + B**2 == 1``."""

    A: float
    B: float
    C: float


class _Sentinel:
    __slots__ = ("name",)

    def __init__(self, name: str) -> None:
        self.name = name

    def __repr__(self) -> str:
        return self.name

    def __bool__(self) -> bool:
        return False


PARALLEL = _Sentinel("Parallel")
COLLINEAR = _Sentinel("Collinear")

PARALLEL_EPS = 1e-12
COLLINEAR_EPS = 1e-12
TANGENCY_EPS = 1e-9


def midpoint(p: CartesianPoint, q: CartesianPoint) -> CartesianPoint:
    return CartesianPoint(0.5 * (p.x + q.x), 0.5 * (p.y + q.y))


def distance(p: CartesianPoint, q: CartesianPoint) -> float:
    return math.hypot(p.x - q.x, p.y - q.y)


def cross(o: CartesianPoint, p: CartesianPoint, q: CartesianPoint) -> float:
    """z-component of (p - o) x (q - o)."""
    return (p.x - o.x) * (q.y - o.y) - (p.y - o.y) * (q.x - o.x)


def make_line(A: float, B: float, C: float) -> LineCart:
    n = math.hypot(A, B)
    if n == 0.0:
        raise ValueError("line normal must be nonzero")
    return LineCart(A / n, B / n, C / n)


def line_through(p: CartesianPoint, q: CartesianPoint) -> LineCart:
    if p == q:
        raise ValueError("line through coincident points")
    A = q.y - p.y
    B = p.x - q.x
    return make_line(A, B, -(A * p.x + B * p.y))


def perpendicular_through(p: CartesianPoint, l: LineCart) -> LineCart:
    """Line through ``p`` perpendicular to ``l``."""
    return make_line(-l.B, l.A, l.B * p.x - l.A * p.y)


def line_intersection(l1: LineCart, l2: LineCart):
    det = l1.A * l2.B - l2.A * l1.B
    if abs(det) < PARALLEL_EPS:
        return PARALLEL
    x = (l1.B * l2.C - l2.B * l1.C) / det
    y = (l2.A * l1.C - l1.A * l2.C) / det
    return CartesianPoint(x, y)


def signed_triangle_area(p: CartesianPoint, q: CartesianPoint, r: CartesianPoint) -> float:
    return 0.5 * cross(p, q, r)


def shoelace_area(pts: Sequence[CartesianPoint]) -> float:
    """Signed polygon area, positive for counterclockwise order.

    A quadrilateral PQRS is evaluated literally as [PQR] + [RSP], so the
    result matches the triangle-sum definition bit for bit and stays
    meaningful for self-intersecting quadrilaterals.
    """
    n = len(pts)
    if n < 3:
        raise ValueError("need at least three points")
    if n == 4:
        p, q, r, s = pts
        return signed_triangle_area(p, q, r) + signed_triangle_area(r, s, p)
    total = 0.0
    for i in range(n):
        j = (i + 1) % n
        total += pts[i].x * pts[j].y - pts[j].x * pts[i].y
    return 0.5 * total


def circle_through(p1: CartesianPoint, p2: CartesianPoint, p3: CartesianPoint):
    xs = (p1.x, p2.x, p3.x)
    ys = (p1.y, p2.y, p3.y)
    scale = max(max(xs) - min(xs), max(ys) - min(ys))
    area = signed_triangle_area(p1, p2, p3)
    if scale == 0.0 or abs(area) < COLLINEAR_EPS * scale * scale:
        return COLLINEAR
    # work relative to p1 for accuracy
    bx, by = p2.x - p1.x, p2.y - p1.y
    cx, cy = p3.x - p1.x, p3.y - p1.y
    d = 2.0 * (bx * cy - by * cx)
    b2 = bx * bx + by * by
    c2 = cx * cx + cy * cy
    ux = (cy * b2 - by * c2) / d
    uy = (bx * c2 - cx * b2) / d
    center = CartesianPoint(p1.x + ux, p1.y + uy)
    return Circle(center, math.hypot(ux, uy))


def circle_circle_intersection(c1: Circle, c2: Circle) -> list[CartesianPoint]:
    dx = c2.center.x - c1.center.x
    dy = c2.center.y - c1.center.y
    d = math.hypot(dx, dy)
    if d == 0.0:
        return []
    r1, r2 = c1.radius, c2.radius
    a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d)
    h2 = r1 * r1 - a * a
    tol = TANGENCY_EPS * max(r1, r2)
    if h2 < 0.0:
        # allow near-tangency slightly outside due to roundoff
        if -h2 > (tol * tol + 2.0 * tol * r1):
            return []
        h2 = 0.0
    h = math.sqrt(h2)
    mx = c1.center.x + a * dx / d
    my = c1.center.y + a * dy / d
    if 2.0 * h < tol:
        return [CartesianPoint(mx, my)]
    ox, oy = -dy / d * h, dx / d * h
    return [CartesianPoint(mx + ox, my + oy), CartesianPoint(mx - ox, my - oy)]


def perpendicular_foot(p: CartesianPoint, l: LineCart) -> CartesianPoint:
    t = l.A * p.x + l.B * p.y + l.C
    return CartesianPoint(p.x - t * l.A, p.y - t * l.B)


def point_line_distance(p: CartesianPoint, l: LineCart) -> float:
    return abs(l.A * p.x + l.B * p.y + l.C)


def diameter(pts: Sequence[CartesianPoint]) -> float:
    best = 0.0
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            best = max(best, distance(pts[i], pts[j]))
    return best
