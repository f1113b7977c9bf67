import math

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from cqexplore.geomcore import (
    COLLINEAR,
    PARALLEL,
    CartesianPoint as P,
    Circle,
    circle_circle_intersection,
    circle_through,
    distance,
    line_intersection,
    line_through,
    make_line,
    midpoint,
    perpendicular_foot,
    perpendicular_through,
    point_line_distance,
    shoelace_area,
    signed_triangle_area,
)

coord = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
point = st.builds(P, coord, coord)


def test_basic_primitives():
    assert midpoint(P(0, 0), P(2, 4)) == P(1, 2)
    assert distance(P(0, 0), P(3, 4)) == 5.0
    assert signed_triangle_area(P(0, 0), P(1, 0), P(0, 1)) == 0.5
    assert signed_triangle_area(P(0, 0), P(0, 1), P(1, 0)) == -0.5
    unit = [P(0, 0), P(1, 0), P(1, 1), P(0, 1)]
    assert shoelace_area(unit) == 1.0
    assert shoelace_area(unit[::-1]) == -1.0


def test_lines():
    l = make_line(3, 4, 5)
    assert math.isclose(l.A ** 2 + l.B ** 2, 1.0)
    x = line_intersection(line_through(P(0, 0), P(1, 1)), line_through(P(0, 1), P(1, 0)))
    assert math.isclose(x.x, 0.5) and math.isclose(x.y, 0.5)
    assert line_intersection(line_through(P(0, 0), P(1, 0)), line_through(P(0, 1), P(1, 1))) is PARALLEL
    base = line_through(P(0, 0), P(1, 0))
    foot = perpendicular_foot(P(0.3, 2.0), base)
    assert math.isclose(foot.x, 0.3) and abs(foot.y) < 1e-15
    assert math.isclose(point_line_distance(P(0.3, 2.0), base), 2.0)
    perp = perpendicular_through(P(0.3, 2.0), base)
    assert abs(perp.A * base.A + perp.B * base.B) < 1e-15


def test_degenerate_inputs():
    assert circle_through(P(0, 0), P(1, 1), P(2, 2)) is COLLINEAR
    assert circle_circle_intersection(Circle(P(0, 0), 1), Circle(P(5, 0), 1)) == []
    assert circle_circle_intersection(Circle(P(0, 0), 1), Circle(P(0, 0), 2)) == []
    tangent = circle_circle_intersection(Circle(P(0, 0), 1), Circle(P(2, 0), 1))
    assert len(tangent) == 1 and math.isclose(tangent[0].x, 1.0)


@given(point, point, point)
def test_circle_through_is_equidistant(p1, p2, p3):
    scale = max(distance(p1, p2), distance(p2, p3), distance(p3, p1))
    assume(scale > 1e-3 and abs(signed_triangle_area(p1, p2, p3)) > 1e-3 * scale * scale)
    c = circle_through(p1, p2, p3)
    for p in (p1, p2, p3):
        assert abs(distance(c.center, p) - c.radius) <= 1e-9 * c.radius


@given(point, st.floats(0, 2 * math.pi), st.floats(0.1, 5), st.floats(0.05, 0.95), st.floats(0.05, 0.95))
def test_circle_intersections_lie_on_both(c1, theta, d, s1, s2):
    # radii chosen so the circles cross: |r1 - r2| < d < r1 + r2
    r1 = d * (0.5 + s1)
    lo, hi = abs(d - r1), d + r1
    r2 = lo + (hi - lo) * s2
    c2 = P(c1.x + d * math.cos(theta), c1.y + d * math.sin(theta))
    pts = circle_circle_intersection(Circle(c1, r1), Circle(c2, r2))
    assert 1 <= len(pts) <= 2
    for p in pts:
        assert abs(distance(p, c1) - r1) <= 1e-9 * max(r1, d)
        assert abs(distance(p, c2) - r2) <= 1e-9 * max(r2, d)


@given(point, point, point, point)
def test_shoelace_is_triangle_sum_bitwise(p, q, r, s):
    assert shoelace_area([p, q, r, s]) == signed_triangle_area(p, q, r) + signed_triangle_area(r, s, p)


@settings(max_examples=200)
@given(point, point, point, point)
def test_line_intersection_on_both_lines(p1, p2, p3, p4):
    assume(distance(p1, p2) > 1e-3 and distance(p3, p4) > 1e-3)
    l1, l2 = line_through(p1, p2), line_through(p3, p4)
    x = line_intersection(l1, l2)
    assume(x is not PARALLEL and abs(l1.A * l2.B - l2.A * l1.B) > 1e-3)
    scale = max(1.0, abs(x.x), abs(x.y))
    assert point_line_distance(x, l1) <= 1e-10 * scale
    assert point_line_distance(x, l2) <= 1e-10 * scale
