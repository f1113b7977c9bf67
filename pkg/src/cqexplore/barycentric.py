"""Barycentric coordinates relative to a reference triangle.

Provides the distance and signed-area formulas expressed directly in
normalized coordinates, the change-of-reference-triangle map, and the
conversions to and from Cartesian coordinates.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .geomcore import CartesianPoint, distance, signed_triangle_area

INFINITY_EPS = 1e-9
RADICAND_EPS = 1e-12


class BaryCoords(NamedTuple):
    u: float
    v: float
    w: float

    @property
    def is_normalized(self) -> bool:
        return abs(self.u + self.v + self.w - 1.0) <= 1e-12


class _AtInfinity:
    def __repr__(self) -> str:
        return "AtInfinity"

    def __bool__(self) -> bool:
        return False


AT_INFINITY = _AtInfinity()


class DegenerateTriangleError(ValueError):
    pass


class RefTriangle(NamedTuple):
    A: CartesianPoint
    B: CartesianPoint
    C: CartesianPoint
    a: float
    b: float
    c: float
    K: float

    @classmethod
    def from_points(cls, A: CartesianPoint, B: CartesianPoint, C: CartesianPoint) -> "RefTriangle":
        return cls(A, B, C, distance(B, C), distance(C, A), distance(A, B),
                   signed_triangle_area(A, B, C))


def normalize(bc: BaryCoords):
    """Scale so the coordinates sum to one, or return ``AT_INFINITY``."""
    u, v, w = bc
    s = u + v + w
    l1 = abs(u) + abs(v) + abs(w)
    if l1 == 0.0:
        raise ValueError("(0, 0, 0) is not a point")
    if abs(s) < INFINITY_EPS * l1:
        return AT_INFINITY
    return BaryCoords(u / s, v / s, w / s)


def bary_distance(t: RefTriangle, p: BaryCoords, q: BaryCoords) -> float:
    x, y, z = p.u - q.u, p.v - q.v, p.w - q.w
    rad = -(t.a * t.a * y * z + t.b * t.b * z * x + t.c * t.c * x * y)
    if rad < 0.0:
        scale = (t.a * t.a + t.b * t.b + t.c * t.c) * (x * x + y * y + z * z)
        if rad < -RADICAND_EPS * max(scale, 1.0):
            raise ValueError("negative radicand: inputs are not normalized")
        rad = 0.0
    return math.sqrt(rad)


def _det3(p: BaryCoords, q: BaryCoords, r: BaryCoords) -> float:
    return (p.u * (q.v * r.w - q.w * r.v)
            - p.v * (q.u * r.w - q.w * r.u)
            + p.w * (q.u * r.v - q.v * r.u))


def bary_area(t: RefTriangle, p: BaryCoords, q: BaryCoords, r: BaryCoords) -> float:
    return _det3(p, q, r) * t.K


def change_of_coordinates(inner: tuple[BaryCoords, BaryCoords, BaryCoords],
                          p_inner: BaryCoords) -> BaryCoords:
    """Coordinates w.r.t. ABC of a point given w.r.t. an inner triangle DEF.

    ``inner`` holds the normalized ABC-coordinates of D, E and F.
    """
    d, e, f = inner
    if abs(_det3(d, e, f)) < 1e-14:
        raise DegenerateTriangleError("inner triangle is degenerate")
    p, q, r = p_inner
    out = BaryCoords(d.u * p + e.u * q + f.u * r,
                     d.v * p + e.v * q + f.v * r,
                     d.w * p + e.w * q + f.w * r)
    res = normalize(out)
    if res is AT_INFINITY:
        return out
    return res


def bary_to_cartesian(t: RefTriangle, p: BaryCoords) -> CartesianPoint:
    return CartesianPoint(p.u * t.A.x + p.v * t.B.x + p.w * t.C.x,
                          p.u * t.A.y + p.v * t.B.y + p.w * t.C.y)


def cartesian_to_bary(t: RefTriangle, p: CartesianPoint) -> BaryCoords:
    if t.K == 0.0:
        raise DegenerateTriangleError("reference triangle is degenerate")
    u = signed_triangle_area(p, t.B, t.C) / t.K
    v = signed_triangle_area(t.A, p, t.C) / t.K
    return BaryCoords(u, v, 1.0 - u - v)
