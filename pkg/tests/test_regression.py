import math

import pytest

from cqexplore.centerdefs import load_registry
from cqexplore.regression import KINDS, TheoremCase, load_manifest, run_case, run_manifest

CASES = load_manifest()
REG = load_registry()


def test_manifest_shape():
    ids = [c.identifier for c in CASES]
    assert len(ids) == len(set(ids))
    assert {c.kind for c in CASES} == set(KINDS)
    assert all(c.constant is not None for c in CASES if c.kind in ("square_ratio", "right_ratio", "isosceles_ratio"))
    assert sum(c.kind == "right_ratio" for c in CASES) == 48
    assert sum(c.kind == "isosceles_ratio" for c in CASES) == 9
    assert sum(c.kind == "square_ratio" for c in CASES) == 10


@pytest.mark.parametrize("case", CASES, ids=lambda c: c.identifier)
def test_case(case):
    missing = [i for i in case.centers if i not in REG]
    if missing and case.restrict:
        pytest.skip(f"list membership checked for bundled centers only; {missing} not bundled")
    if missing:
        pytest.xfail(f"center definitions not bundled: {missing}")
    res = run_case(case, REG)
    assert res.status == "pass", (res.status, res.worst_residual, res.detail)
    assert res.worst_residual < case.tolerance


def test_wrong_constant_fails():
    case = TheoremCase.from_dict({"id": "t", "kind": "relation", "shape": "general", "radiator": "ArbitraryPoint",
                                  "center": 2, "relation": "AreaRatio",
                                  "constant": {"kind": "Rational", "p": 4, "q": 1}})
    res = run_case(case, REG)
    assert res.status == "fail" and res.worst_residual > 0.1


def test_bad_shape_is_an_error_not_a_failure():
    case = TheoremCase.from_dict({"id": "t", "kind": "relation", "shape": "pentagon", "radiator": "ArbitraryPoint",
                                  "center": 2, "relation": "SameArea"})
    assert run_case(case, REG).status == "error"


def test_unavailable_and_unknown_kind():
    case = TheoremCase.from_dict({"id": "t", "kind": "square_ratio", "center": 99999,
                                  "constant": {"kind": "Rational", "p": 1, "q": 1}})
    res = run_case(case, REG)
    assert res.status == "unavailable" and math.isinf(res.worst_residual)
    with pytest.raises(ValueError):
        TheoremCase.from_dict({"id": "t", "kind": "lemma", "center": 1})


def test_run_manifest_subset():
    out = run_manifest(REG, CASES[:3])
    assert [r.passed for r in out] == [True, True, True]
