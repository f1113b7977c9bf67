import json
import random

import pytest

from cqexplore.explorer import (
    ConfigError,
    RelationFinding,
    SweepConfig,
    cell_seed,
    combine,
    emit_report,
    plan,
    read_findings,
    run_lengths,
    run_sweep,
    square_ratio_table,
    suppress_inherited,
    sweep,
    verify_findings,
)
from cqexplore.quadgen import ShapeClass, generate
from cqexplore.radiators import RadiatorKind, construct
from cqexplore.relations import (
    SKIPPED_INFINITY,
    Measurement,
    Relation,
    RelationKind,
    central_quadrilateral,
    recognize_constant,
)

CENTERS = [1, 2, 3, 4, 5, 20, 402, 512, 546, 620]
SHAPES = ["general", "orthodiagonal", "rectangle", "square"]


def _cfg(samples=5, **kw):
    base = dict(shapes=SHAPES, radiators=["DiagonalPoint"], centers=CENTERS, samples_per_shape=samples)
    base.update(kw)
    return SweepConfig(**base)


@pytest.fixture(scope="module")
def result(reg):
    return sweep(_cfg(), reg)


def _keys(findings):
    return {(f.shape, f.radiator, f.center_index, f.relation.key()) for f in findings}


def _finding(shape, radiator, center, ratio=None, kind=RelationKind.AreaRatio):
    k = recognize_constant(ratio) if ratio is not None else None
    return RelationFinding(ShapeClass(shape), RadiatorKind(radiator), center, Relation(kind, k), 5)


def test_config_validation(reg):
    with pytest.raises(ConfigError):
        _cfg(samples=2)
    with pytest.raises(ConfigError):
        _cfg(tolerances={"area": 1e-3})
    with pytest.raises(ValueError):
        _cfg(shapes=["pentagon"])
    with pytest.raises(ConfigError, match="99999"):
        sweep(_cfg(centers=[2, 99999]), reg)


def test_cell_seed_is_stable_and_distinct():
    a = cell_seed(0, "general", "DiagonalPoint", 2)
    assert a == cell_seed(0, "general", "DiagonalPoint", 2)
    assert len({a, cell_seed(1, "general", "DiagonalPoint", 2), cell_seed(0, "square", "DiagonalPoint", 2),
                cell_seed(0, "general", "PonceletPoint", 2), cell_seed(0, "general", "DiagonalPoint", 3)}) == 5


def test_combine_needs_agreement():
    m = lambda r, sim=False: Measurement(r, False, sim, False, False, False)
    assert [str(r) for r in combine([m(4.5), m(4.5 + 1e-9), m(4.5)], "rational")] == ["[ABCD]=9/2[FGHI]"]
    assert combine([m(4.5), m(4.6), m(4.5)], "rational") == []
    assert combine([m(1.0)] * 3, "rational") == [Relation(RelationKind.SameArea)]
    assert combine([m(3.14159)] * 3, "rational") == []
    assert combine([m(None, True), m(2.0, True), m(2.0, True)], "rational") == [Relation(RelationKind.Similar)]
    assert combine([m(2.0, True), m(2.0, False), m(2.0, True)], "rational") == [
        Relation(RelationKind.AreaRatio, recognize_constant(2.0))]
    assert combine([m(200 / 49)] * 3, "rational") == []
    assert str(combine([m(200 / 49)] * 3, "extended")[0]) == "[ABCD]=200/49[FGHI]"


def test_plan_includes_ancestors_and_arbitrary_point():
    pairs = plan(SweepConfig(["rectangle"], ["Circumcenter"], [2]))
    assert (ShapeClass.rectangle, RadiatorKind.Circumcenter) in pairs
    assert (ShapeClass.cyclic, RadiatorKind.Circumcenter) in pairs
    assert (ShapeClass.general, RadiatorKind.Circumcenter) not in pairs
    assert (ShapeClass.equidiagonal, RadiatorKind.ArbitraryPoint) in pairs
    assert (ShapeClass.general, RadiatorKind.ArbitraryPoint) in pairs


def test_expected_rows(result):
    got = {(f.shape.value, f.center_index, str(f.relation)) for f in result.findings if f.suppressed_by is None}
    assert ("general", 20, "[ABCD]=1/2[FGHI]") in got
    assert ("orthodiagonal", 546, "[ABCD]=32[FGHI]") in got
    assert ("orthodiagonal", 5, "[ABCD]=8[FGHI]") in got
    assert ("rectangle", 402, "[ABCD]=8[FGHI]") in got
    assert all(f.confirmations == 5 for f in result.findings)


def test_square_inherits_from_general(reg):
    res = sweep(SweepConfig(["general", "square"], ["ArbitraryPoint"], [2]), reg)
    by = {(f.shape, str(f.relation)): f.suppressed_by for f in res.findings}
    assert by[(ShapeClass.general, "[ABCD]=9/2[FGHI]")] is None
    assert by[(ShapeClass.square, "[ABCD]=9/2[FGHI]")] == "ancestor general"
    assert by[(ShapeClass.square, "ABCD∼FGHI")] is None


def test_unrelated_shapes_do_not_suppress_each_other():
    ortho = _finding("orthodiagonal", "DiagonalPoint", 402, 8)
    rect = _finding("rectangle", "DiagonalPoint", 402, 8)
    out = suppress_inherited([ortho, rect])
    assert [f.suppressed_by for f in out] == [None, None]


def test_coincidence_suppression():
    f = _finding("cyclicOrthodiagonal", "PonceletPoint", 2, 2)
    assert suppress_inherited([f])[0].suppressed_by.startswith("coincidence PonceletPoint=DiagonalPoint")


def test_missing_ancestor_runs_are_an_error():
    f = _finding("square", "DiagonalPoint", 2, 4.5)
    with pytest.raises(ConfigError, match="missing ancestor runs"):
        suppress_inherited([f], ran={(ShapeClass.square, RadiatorKind.DiagonalPoint)})


def test_suppressed_findings_hold_on_the_ancestor(reg):
    res = sweep(_cfg(shapes=["square"]), reg)
    sup = [f for f in res.findings if f.suppressed_by and f.suppressed_by.startswith("ancestor ")]
    assert sup
    moved = [RelationFinding(ShapeClass(f.suppressed_by.split()[1]), f.radiator, f.center_index, f.relation,
                             f.confirmations) for f in sup]
    assert all(ok for _, ok in verify_findings(moved, reg, base_seed=7))


def test_skipped_cells_recheck_at_infinity(result, reg):
    inf = [k for k, v in result.skipped.items() if v == "infinity"]
    assert (ShapeClass.general, RadiatorKind.DiagonalPoint, 512) in inf
    rng = random.Random(11)
    for shape, radiator, index in inf:
        q = generate(shape, rng.getrandbits(63))
        e = construct(radiator, q, rng).point
        assert central_quadrilateral(q, e, reg[index]) is SKIPPED_INFINITY


def test_determinism_and_worker_independence(result, reg):
    again = sweep(_cfg(), reg, workers=2)
    for fmt in ("md", "csv", "json"):
        assert emit_report(result.findings, fmt) == emit_report(again.findings, fmt)
    assert run_sweep(_cfg(), reg) == result.findings


def test_more_samples_never_add_findings(reg):
    few = run_sweep(_cfg(samples=3), reg)
    many = run_sweep(_cfg(samples=7), reg)
    assert _keys(many) <= _keys(few)


def test_json_round_trip(result):
    data = emit_report(result.findings, "json", include_suppressed=True)
    assert read_findings(data) == result.findings
    obj = json.loads(data)[0]
    assert set(obj) == {"shape", "radiator", "center", "relation", "constant", "confirmations", "suppressed_by"}
    assert set(obj["constant"]) == {"kind", "p", "q", "d", "r", "value"}


def test_markdown_and_csv(result):
    md = emit_report(result.findings, "md").decode()
    assert md.startswith("## DiagonalPoint\n\n| Quadrilateral Type | Relationship | centers |")
    assert "| rectangle | [ABCD]=8[FGHI] | 402, 620 |" in md
    full = emit_report(result.findings, "md", include_suppressed=True).decode()
    assert "suppressed by" in full and "ancestor" in full
    rows = emit_report(result.findings, "csv").decode().splitlines()
    assert rows[0] == "shape,radiator,center,relation,constant,confirmations,suppressed_by"
    with pytest.raises(ValueError):
        emit_report(result.findings, "xml")


def test_empty_report():
    md = emit_report([], "md", radiators=["Anticenter"]).decode()
    assert md.splitlines()[:5] == ["## Anticenter", "", "| Quadrilateral Type | Relationship | centers |",
                                   "|---|---|---|", "| | No relationships were found | |"]
    assert "No relationships were found" in emit_report([], "md").decode()
    assert emit_report([], "json") == b"[]\n"


def test_run_lengths():
    assert run_lengths([125, 122, 123, 124, 140]) == "122–125, 140"
    assert run_lengths([1, 2, 4]) == "1, 2, 4"
    assert run_lengths([]) == ""


def test_verify_rejects_false_claims(reg):
    good = _finding("general", "ArbitraryPoint", 2, 4.5)
    bad = _finding("general", "ArbitraryPoint", 2, 4)
    assert [ok for _, ok in verify_findings([good, bad], reg)] == [True, False]


def test_square_ratio_table(reg):
    got = {i: str(k) for i, k in square_ratio_table(reg, [1, 2, 3, 356, 512])}
    assert got[1] == "3+2√2"
    assert got[2] == "9/2"
    assert got[356] == "6"
    assert got[3] == "2"
    assert 512 not in got
