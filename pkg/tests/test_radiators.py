import random

import pytest

from cqexplore.geomcore import distance
from cqexplore.quadgen import SHAPES, ShapeClass, generate, is_a
from cqexplore.radiators import (
    NOT_APPLICABLE,
    RADIATORS,
    RESIDUAL_TOL,
    RadiatorKind as R,
    applicable,
    coincidence_for,
    construct,
    inside,
)

SEEDS = range(20)

COINCIDENT = [
    (R.PonceletPoint, R.DiagonalPoint, "parallelogram"),
    (R.PonceletPoint, R.DiagonalPoint, "orthodiagonal"),
    (R.SteinerPoint, R.DiagonalPoint, "parallelogram"),
    (R.SteinerPoint, R.Circumcenter, "cyclic"),
    (R.Anticenter, R.PonceletPoint, "cyclic"),
    (R.Anticenter, R.DiagonalPoint, "cyclicOrthodiagonal"),
    (R.Circumcenter, R.DiagonalPoint, "rectangle"),
    (R.Incenter, R.DiagonalPoint, "rhombus"),
    (R.Incenter, R.VertexCentroid, "bicentricTrapezoid"),
    (R.VertexCentroid, R.DiagonalPoint, "parallelogram"),
    (R.Orthocenter, R.DiagonalPoint, "rectangle"),
    (R.Orthocenter, R.Anticenter, "cyclic"),
]


@pytest.mark.parametrize("one, other, shape", COINCIDENT, ids=lambda x: str(x))
def test_coincidences(one, other, shape):
    for seed in SEEDS:
        q = generate(shape, seed)
        p1, p2 = construct(one, q).point, construct(other, q).point
        assert distance(p1, p2) <= 1e-8 * q.diameter
        assert coincidence_for(one, shape) is not None


def test_radiators_are_distinct_where_no_rule_applies():
    q = generate("general", 1)
    pts = [construct(r, q).point for r in (R.DiagonalPoint, R.PonceletPoint, R.SteinerPoint, R.VertexCentroid)]
    for i in range(len(pts)):
        for j in range(i):
            assert distance(pts[i], pts[j]) > 1e-3 * q.diameter


@pytest.mark.parametrize("shape", SHAPES, ids=str)
def test_constructions_succeed_with_small_residual(shape):
    rng = random.Random(0)
    for seed in range(10):
        q = generate(shape, seed)
        for r in RADIATORS:
            res = construct(r, q, rng)
            if not applicable(r, shape):
                continue
            assert res is not NOT_APPLICABLE, (r, seed)
            assert res.residual < RESIDUAL_TOL * q.diameter


def test_diagonal_point_and_centroid_are_interior():
    for shape in SHAPES:
        for seed in range(10):
            q = generate(shape, seed)
            for r in (R.DiagonalPoint, R.VertexCentroid):
                res = construct(r, q)
                assert res.inside and inside(q, res.point)


def test_not_applicable_cases():
    assert construct(R.Circumcenter, generate("general", 0)) is NOT_APPLICABLE
    assert construct(R.Incenter, generate("general", 0)) is NOT_APPLICABLE
    assert construct(R.ThirdDiagonalMidpoint, generate("trapezoid", 0)) is NOT_APPLICABLE
    assert not applicable(R.Circumcenter, "kite")
    assert applicable(R.Circumcenter, "square")
    assert not applicable(R.ThirdDiagonalMidpoint, "rhombus")


def test_arbitrary_point_needs_rng_and_is_interior():
    q = generate("general", 2)
    with pytest.raises(ValueError):
        construct(R.ArbitraryPoint, q)
    rng = random.Random(3)
    for _ in range(50):
        assert construct(R.ArbitraryPoint, q, rng).inside


def test_circumcenter_is_equidistant():
    for seed in SEEDS:
        q = generate("cyclic", seed)
        o = construct(R.Circumcenter, q).point
        d = [distance(o, v) for v in q.vertices]
        assert max(d) - min(d) <= 1e-9 * q.diameter


def test_coincidence_rules_follow_the_taxonomy():
    assert coincidence_for(R.PonceletPoint, "square") is not None
    assert coincidence_for(R.PonceletPoint, "general") is None
    assert coincidence_for(R.DiagonalPoint, "square") is None
    for s in SHAPES:
        rule = coincidence_for(R.SteinerPoint, s)
        if rule is not None:
            assert is_a(s, rule.shape)
    assert is_a(ShapeClass.square, ShapeClass.parallelogram)
