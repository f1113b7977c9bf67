import itertools

import pytest

from cqexplore.geomcore import distance
from cqexplore.quadgen import (
    SHAPES,
    QuadInstance,
    ShapeClass,
    ancestors,
    as_shape,
    condition_residual,
    descendants,
    generate,
    is_a,
    validate,
)

SEEDS = range(100)


@pytest.mark.parametrize("shape", SHAPES, ids=str)
def test_generated_instances_satisfy_shape_and_ancestors(shape):
    anc = ancestors(shape)
    for seed in SEEDS:
        q = generate(shape, seed)
        assert q.is_convex()
        assert validate(q, shape)
        for a in anc:
            assert validate(q, a), (seed, a)


@pytest.mark.parametrize("shape", SHAPES, ids=str)
def test_distinct_seeds_give_distinct_instances(shape):
    qs = [generate(shape, s) for s in range(100)]
    for q1, q2 in itertools.combinations(qs, 2):
        assert max(distance(p, r) for p, r in zip(q1.vertices, q2.vertices)) > 1e-6


def test_generation_is_deterministic():
    assert generate("kite", 7) == generate("kite", 7)
    assert generate("kite", 7) != generate("kite", 8)


def test_general_instances_are_not_special():
    for seed in SEEDS:
        q = generate("general", seed)
        for s in SHAPES:
            if s is not ShapeClass.general:
                assert not validate(q, s), (seed, s)


def test_ancestry_examples():
    assert ShapeClass.equidiagonal in ancestors("rectangle")
    assert ShapeClass.orthodiagonal not in ancestors("rectangle")
    assert ancestors("square") >= {ShapeClass.rectangle, ShapeClass.rhombus, ShapeClass.kite,
                                   ShapeClass.cyclic, ShapeClass.general}
    assert ShapeClass.square in descendants("kite")
    assert is_a("square", "square") and not is_a("general", "square")
    for s in SHAPES:
        assert s not in ancestors(s)
        if s is not ShapeClass.general:
            assert ShapeClass.general in ancestors(s)


def test_validate_on_hand_made_instances():
    square = QuadInstance.from_points([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert validate(square, "square") and validate(square, "cyclic")
    kite = QuadInstance.from_points([(-1, 0), (0, -1), (1, 0), (0, 2)])
    assert validate(kite, "kite") and validate(kite, "orthodiagonal")
    assert not validate(kite, "cyclic") and not validate(kite, "parallelogram")
    clockwise = QuadInstance.from_points([(0, 0), (0, 1), (1, 1), (1, 0)])
    assert not clockwise.is_convex() and not validate(clockwise, "general")
    assert condition_residual(square, "trapezoid") == 0.0


def test_instance_accessors_and_json():
    q = generate("rectangle", 3)
    assert QuadInstance.from_json(q.to_json()) == q
    assert q.p == pytest.approx(q.q)
    assert sum(q.angles) == pytest.approx(2 * 3.141592653589793)
    with pytest.raises(ValueError):
        QuadInstance.from_points([(0, 0), (1, 0), (1, 1)])


def test_unknown_shape():
    with pytest.raises(ValueError, match="unknown shape"):
        as_shape("pentagon")
