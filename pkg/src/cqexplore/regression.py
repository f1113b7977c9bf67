"""Executable checks for every quantitative result in the bundled manifest.

A case names a shape, radiator and center (or, for the triangle tables,
just a center) together with the expected relation and constant.  Cases
live in ``data/theorems.json`` so the list doubles as machine-readable
ground truth.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Optional, Sequence

from .barycentric import AT_INFINITY
from .centerdefs import (
    UNDEFINED,
    CenterRegistry,
    classify_isosceles_behavior,
    classify_right_triangle_ratio,
    eval_center,
    isosceles_samples,
    right_samples,
)
from .explorer import SQUARE_TRIANGLE, ConfigError, admissible_sample
from .quadgen import GenerationError, as_shape
from .radiators import ConstructionError, as_radiator
from .relations import (
    CentralQuad,
    RecognizedConstant,
    central_quadrilateral,
    congruence_residual,
    relation_residual,
)

DEFAULT_SEEDS = (11, 22, 33, 44, 55)
CASE_TOL = 1e-6

KINDS = ("relation", "mutual_congruence", "square_ratio", "right_ratio", "right_position",
         "isosceles_ratio", "isosceles_position")


@dataclass(frozen=True)
class TheoremCase:
    identifier: str
    kind: str
    center: int
    group: str = ""
    shape: Optional[str] = None
    radiator: Optional[str] = None
    relation: Optional[str] = None
    constant: Optional[RecognizedConstant] = None
    other_center: Optional[int] = None
    position: Optional[str] = None
    tolerance: float = CASE_TOL
    restrict: bool = False  # only meaningful when the registry has the center

    @classmethod
    def from_dict(cls, obj: dict) -> "TheoremCase":
        if obj["kind"] not in KINDS:
            raise ValueError(f"unknown case kind {obj['kind']!r}")
        k = obj.get("constant")
        const = None
        if k is not None:
            value = k["p"] / k["q"] if k["kind"] == "Rational" else (k["p"] + k["q"] * math.sqrt(k["d"])) / k["r"]
            const = RecognizedConstant(k["kind"], value, k.get("p"), k.get("q"), k.get("d"), k.get("r"))
        return cls(
            identifier=obj["id"], kind=obj["kind"], center=int(obj["center"]), group=obj.get("group", ""),
            shape=obj.get("shape"), radiator=obj.get("radiator"), relation=obj.get("relation"),
            constant=const, other_center=obj.get("other_center"), position=obj.get("position"),
            tolerance=float(obj.get("tolerance", CASE_TOL)), restrict=bool(obj.get("restrict", False)),
        )

    @property
    def centers(self) -> tuple[int, ...]:
        return (self.center,) if self.other_center is None else (self.center, self.other_center)


@dataclass
class CaseResult:
    case: TheoremCase
    status: str  # pass | fail | error | unavailable
    worst_residual: float = 0.0
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def load_manifest(path: Optional[str] = None) -> list[TheoremCase]:
    if path is None:
        text = resources.files("cqexplore").joinpath("data/theorems.json").read_text(encoding="utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return [TheoremCase.from_dict(o) for o in json.loads(text)]


def _central(case: TheoremCase, reg: CenterRegistry, seed: int, index: int):
    q, e = admissible_sample(case.shape, case.radiator, random.Random(seed))
    return q, central_quadrilateral(q, e, reg.defs[index])


def _relation_residual(case: TheoremCase, reg: CenterRegistry, seed: int) -> float:
    q, c = _central(case, reg, seed, case.center)
    if not isinstance(c, CentralQuad):
        return math.inf
    if case.kind == "mutual_congruence":
        _, c2 = _central(case, reg, seed, case.other_center)
        if not isinstance(c2, CentralQuad):
            return math.inf
        return congruence_residual(c.points, c2.points)
    expected = case.constant.exact if case.constant else None
    return relation_residual(case.relation, q.vertices, c.points, expected)


def _rel(x: float, want: float) -> float:
    return abs(x - want) / max(abs(want), 1e-300)


def _triangle_residual(case: TheoremCase, reg: CenterRegistry) -> tuple[float, str]:
    center = reg.defs[case.center]
    if case.kind == "square_ratio":
        bc = eval_center(center, *SQUARE_TRIANGLE)
        if bc is AT_INFINITY or bc is UNDEFINED:
            return math.inf, "center not finite on the isosceles right triangle"
        t = 1.0 - bc.u
        return _rel(2.0 / (t * t), case.constant.exact), ""
    if case.kind == "right_ratio":
        worst = 0.0
        for abc in right_samples():
            p = eval_center(center, *abc)
            if p is AT_INFINITY or p is UNDEFINED:
                return math.inf, "center not finite"
            # on the median; AM/AX = 1/|1 - u| where X = uA + (1 - u)M
            off = abs(p.v - p.w)
            ratio = 1.0 / abs(1.0 - p.u) if p.u != 1.0 else math.inf
            worst = max(worst, off, _rel(ratio, case.constant.exact))
        return worst, ""
    if case.kind == "isosceles_ratio":
        worst = 0.0
        for abc in isosceles_samples():
            p = eval_center(center, *abc)
            if p is AT_INFINITY or p is UNDEFINED:
                return math.inf, "center not finite"
            worst = max(worst, abs(p.v - p.w), _rel(p.u, case.constant.exact))
        return worst, ""
    if case.kind == "right_position":
        got = classify_right_triangle_ratio(center).kind
    else:
        got = classify_isosceles_behavior(center).kind
    return (0.0 if got == case.position else math.inf), f"classified {got}"


def run_case(case: TheoremCase, reg: CenterRegistry, seeds: Sequence[int] = DEFAULT_SEEDS) -> CaseResult:
    """Pass iff the expected relation holds on every seed within tolerance."""
    missing = [i for i in case.centers if i not in reg.defs]
    if missing:
        return CaseResult(case, "unavailable", math.inf, f"centers not in registry: {missing}")
    try:
        if case.kind in ("relation", "mutual_congruence"):
            as_shape(case.shape), as_radiator(case.radiator)
            worst = max(_relation_residual(case, reg, s) for s in seeds)
            detail = ""
        else:
            worst, detail = _triangle_residual(case, reg)
    except (GenerationError, ConstructionError, ConfigError, ValueError) as exc:
        return CaseResult(case, "error", math.inf, f"{type(exc).__name__}: {exc}")
    status = "pass" if worst < case.tolerance else "fail"
    return CaseResult(case, status, worst, detail)


def run_manifest(reg: CenterRegistry, cases: Optional[Iterable[TheoremCase]] = None,
                 seeds: Sequence[int] = DEFAULT_SEEDS) -> list[CaseResult]:
    return [run_case(c, reg, seeds) for c in (load_manifest() if cases is None else cases)]
