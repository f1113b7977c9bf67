"""The discovery sweep over (shape, radiator, center) cells, suppression of
inherited findings, the square ratio table, and report rendering."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import multiprocessing
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Sequence

from .barycentric import AT_INFINITY
from .centerdefs import UNDEFINED, CenterRegistry, eval_center
from .quadgen import SHAPES, ShapeClass, ancestors, as_shape, generate
from .radiators import (
    NOT_APPLICABLE,
    RADIATORS,
    ConstructionError,
    RadiatorKind,
    applicable,
    as_radiator,
    coincidence_for,
    construct,
)
from .relations import (
    REL_TOL,
    SKIPPED_INFINITY,
    Measurement,
    RecognitionMode,
    RecognizedConstant,
    Relation,
    RelationKind,
    admissible,
    central_quadrilateral,
    measure,
    recognize_constant,
)

CONSISTENCY_TOL = 1e-6
DEFAULT_SAMPLES = 5

_FLAGS = (
    ("congruent", RelationKind.Congruent),
    ("similar", RelationKind.Similar),
    ("same_perimeter", RelationKind.SamePerimeter),
    ("congruent_circumcircles", RelationKind.CongruentCircumcircles),
    ("same_circumcircle", RelationKind.SameCircumcircle),
)
_KIND_ORDER = {k: i for i, k in enumerate(RelationKind)}
_SHAPE_ORDER = {s: i for i, s in enumerate(SHAPES)}
_RADIATOR_ORDER = {r: i for i, r in enumerate(RADIATORS)}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SweepConfig:
    shapes: frozenset
    radiators: frozenset
    centers: frozenset
    samples_per_shape: int = DEFAULT_SAMPLES
    base_seed: int = 0
    tolerances: dict = field(default_factory=dict)
    mode: RecognitionMode = RecognitionMode.rational

    def __post_init__(self):
        if self.samples_per_shape < 3:
            raise ConfigError("samples_per_shape must be at least 3")
        object.__setattr__(self, "shapes", frozenset(as_shape(s) for s in self.shapes))
        object.__setattr__(self, "radiators", frozenset(as_radiator(r) for r in self.radiators))
        object.__setattr__(self, "centers", frozenset(int(i) for i in self.centers))
        object.__setattr__(self, "mode", RecognitionMode(str(self.mode)))
        unknown = set(self.tolerances) - {"relation", "consistency"}
        if unknown:
            raise ConfigError(f"unknown tolerance keys: {sorted(unknown)}")

    @property
    def relation_tol(self) -> float:
        return self.tolerances.get("relation", REL_TOL)

    @property
    def consistency_tol(self) -> float:
        return self.tolerances.get("consistency", CONSISTENCY_TOL)


@dataclass(frozen=True)
class RelationFinding:
    shape: ShapeClass
    radiator: RadiatorKind
    center_index: int
    relation: Relation
    confirmations: int
    suppressed_by: Optional[str] = None

    def cell(self) -> tuple:
        return (self.shape, self.radiator, self.center_index)

    def sort_key(self) -> tuple:
        k = self.relation.constant
        return (_RADIATOR_ORDER[self.radiator], _SHAPE_ORDER[self.shape],
                _KIND_ORDER[self.relation.kind], -(k.exact if k else 0.0),
                self.center_index)

    def to_dict(self) -> dict:
        k = self.relation.constant
        return {
            "shape": self.shape.value,
            "radiator": self.radiator.value,
            "center": self.center_index,
            "relation": self.relation.kind.value,
            "constant": k.to_dict() if k else None,
            "confirmations": self.confirmations,
            "suppressed_by": self.suppressed_by,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "RelationFinding":
        k = obj.get("constant")
        return cls(
            as_shape(obj["shape"]),
            as_radiator(obj["radiator"]),
            int(obj["center"]),
            Relation(RelationKind(obj["relation"]), RecognizedConstant.from_dict(k) if k else None),
            int(obj["confirmations"]),
            obj.get("suppressed_by"),
        )


@dataclass
class SweepResult:
    findings: list
    skipped: dict  # cell -> "infinity" | "undefined"
    ran: set  # (shape, radiator) pairs that were swept


def cell_seed(base_seed: int, shape, radiator, center: int) -> int:
    text = f"{base_seed}:{as_shape(shape).value}:{as_radiator(radiator).value}:{center}"
    return int.from_bytes(hashlib.blake2b(text.encode(), digest_size=8).digest(), "big")


def _agree(values: Sequence[float], tol: float) -> bool:
    ref = values[0]
    return all(abs(v - ref) <= tol * max(abs(v), abs(ref)) for v in values)


def combine(measurements: Sequence[Measurement], mode: RecognitionMode,
            consistency_tol: float = CONSISTENCY_TOL) -> list[Relation]:
    """Relations that hold on every sample, with one consistent constant."""
    out: list[Relation] = []
    ratios = [m.area_ratio for m in measurements]
    if all(r is not None for r in ratios) and _agree(ratios, consistency_tol):
        ks = [recognize_constant(r, mode) for r in ratios]
        k0 = ks[0]
        if all(k.same_as(k0) for k in ks) and _agree([k0.exact] + ratios, consistency_tol):
            if k0.kind == "Rational" and k0.p == 1 and k0.q == 1:
                out.append(Relation(RelationKind.SameArea))
            else:
                # findings carry the exact constant, not one sample's measurement
                out.append(Relation(RelationKind.AreaRatio, replace(k0, value=k0.exact, residual=0.0)))
    for attr, kind in _FLAGS:
        if all(getattr(m, attr) for m in measurements):
            out.append(Relation(kind))
    return out


MAX_REDRAWS = 100


def admissible_sample(shape, radiator, rng: random.Random):
    """A fresh instance and radiator whose radial triangles are usable."""
    for _ in range(MAX_REDRAWS):
        q = generate(shape, rng.getrandbits(63))
        e = construct(radiator, q, rng)
        if e is NOT_APPLICABLE:
            raise ConfigError(f"{as_radiator(radiator).value} does not exist on {q.shape.value}")
        if admissible(q, e.point):
            return q, e.point
    raise ConstructionError(f"no admissible {as_radiator(radiator).value} sample on {as_shape(shape).value}")


def sample_cell(shape, radiator, center, n: int, seed: int, tol: float = REL_TOL):
    """Measurements for ``n`` fresh samples, or "infinity" / "undefined"."""
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        q, e = admissible_sample(shape, radiator, rng)
        c = central_quadrilateral(q, e, center)
        if c is SKIPPED_INFINITY:
            return "infinity"
        if c is UNDEFINED:
            return "undefined"
        out.append(measure(q, c, tol))
    return out


def run_cell(cfg: SweepConfig, reg: CenterRegistry, shape, radiator, index: int):
    seed = cell_seed(cfg.base_seed, shape, radiator, index)
    got = sample_cell(shape, radiator, reg.defs[index], cfg.samples_per_shape, seed, cfg.relation_tol)
    if isinstance(got, str):
        return got
    return [RelationFinding(shape, radiator, index, rel, cfg.samples_per_shape)
            for rel in combine(got, cfg.mode, cfg.consistency_tol)]


def _closure(shapes: Iterable[ShapeClass]) -> set[ShapeClass]:
    out = set()
    for s in shapes:
        out.add(s)
        out |= ancestors(s)
    return out


def plan(cfg: SweepConfig) -> list[tuple[ShapeClass, RadiatorKind]]:
    """(shape, radiator) runs needed to report and suppress ``cfg``."""
    pairs = set()
    for r in cfg.radiators:
        for s in _closure(cfg.shapes):
            if applicable(r, s):
                pairs.add((s, r))
    for s in _closure(s for s, _ in pairs):
        pairs.add((s, RadiatorKind.ArbitraryPoint))
    return sorted(pairs, key=lambda p: (_RADIATOR_ORDER[p[1]], _SHAPE_ORDER[p[0]]))


_SHARED: Optional[tuple] = None  # (cfg, reg) inherited by forked workers


def _run_pair(pair) -> list:
    cfg, reg = _SHARED  # type: ignore[misc]
    shape, radiator = pair
    return [(index, run_cell(cfg, reg, shape, radiator, index)) for index in sorted(cfg.centers)]


def _pool_context():
    try:
        return multiprocessing.get_context("fork")
    except ValueError:
        return None


def sweep(cfg: SweepConfig, reg: CenterRegistry, workers: int = 1) -> SweepResult:
    """All cells needed for ``cfg``, suppression applied, reported cells only.

    With ``workers > 1`` the (shape, radiator) runs are spread over forked
    processes; the output does not depend on the worker count.
    """
    global _SHARED
    missing = sorted(cfg.centers - set(reg.defs))
    if missing:
        raise ConfigError(f"center indices not in registry: {missing}")
    pairs = plan(cfg)
    _SHARED = (cfg, reg)
    ctx = _pool_context() if workers > 1 else None
    try:
        if ctx is None:
            results = [_run_pair(p) for p in pairs]
        else:
            with ProcessPoolExecutor(workers, mp_context=ctx) as pool:
                results = list(pool.map(_run_pair, pairs))
    finally:
        _SHARED = None
    findings, skipped = [], {}
    for (shape, radiator), cells in zip(pairs, results):
        for index, got in cells:
            if isinstance(got, str):
                skipped[(shape, radiator, index)] = got
            else:
                findings.extend(got)
    ran = set(pairs)
    findings = suppress_inherited(findings, ran)
    keep = [f for f in findings if f.shape in cfg.shapes and f.radiator in cfg.radiators]
    skipped = {k: v for k, v in skipped.items() if k[0] in cfg.shapes and k[1] in cfg.radiators}
    return SweepResult(sorted(keep, key=RelationFinding.sort_key), skipped, ran)


def run_sweep(cfg: SweepConfig, reg: CenterRegistry) -> list[RelationFinding]:
    return sweep(cfg, reg).findings


def _rel_key(f: RelationFinding) -> tuple:
    return (f.center_index, f.relation.key())


def suppress_inherited(findings: Sequence[RelationFinding], ran: Optional[set] = None) -> list[RelationFinding]:
    """Fill ``suppressed_by`` for findings already explained elsewhere.

    A finding on shape S is suppressed when the same radiator yields the
    same relation on an ancestor of S, when the radiator coincides with
    another one on S or an ancestor, or when the relation holds for an
    arbitrary radiator on S or an ancestor.  ``ran`` lists the
    (shape, radiator) runs behind ``findings``; a missing ancestor run is
    an error.
    """
    held: dict[tuple, set] = {}
    for f in findings:
        held.setdefault((f.shape, f.radiator), set()).add(_rel_key(f))
    if ran is not None:
        for f in findings:
            lacking = [a.value for a in ancestors(f.shape)
                       if applicable(f.radiator, a) and (a, f.radiator) not in ran]
            if lacking:
                raise ConfigError(f"missing ancestor runs for {f.radiator.value}: {sorted(lacking)}")
    out = []
    for f in findings:
        out.append(replace(f, suppressed_by=_suppressor(f, held)))
    return out


def _suppressor(f: RelationFinding, held: dict) -> Optional[str]:
    anc = sorted(ancestors(f.shape), key=_SHAPE_ORDER.get)
    key = _rel_key(f)
    for a in anc:
        if key in held.get((a, f.radiator), ()):
            return f"ancestor {a.value}"
    for s in [f.shape] + anc:
        c = coincidence_for(f.radiator, s)
        if c is not None:
            return f"coincidence {c.radiator.value}={c.same_as.value} on {c.shape.value}"
    arb = RadiatorKind.ArbitraryPoint
    if f.radiator is not arb:
        for s in [f.shape] + anc:
            if key in held.get((s, arb), ()):
                return f"{arb.value} on {s.value}"
    return None


def verify_findings(findings: Sequence[RelationFinding], reg: CenterRegistry,
                    samples: int = DEFAULT_SAMPLES, base_seed: int = 1,
                    mode=RecognitionMode.extended) -> list[tuple[RelationFinding, bool]]:
    """Re-check each finding on fresh samples."""
    out = []
    for f in findings:
        seed = cell_seed(base_seed, f.shape, f.radiator, f.center_index) ^ 0x5EED
        got = sample_cell(f.shape, f.radiator, reg.defs[f.center_index], samples, seed)
        ok = False
        if not isinstance(got, str):
            ok = any(r.key() == f.relation.key() for r in combine(got, mode))
        out.append((f, ok))
    return out


# ---------------------------------------------------------------------------
# Squares

SQUARE_TRIANGLE = (math.sqrt(2.0), 1.0, 1.0)


def square_ratio_table(reg: CenterRegistry, indices: Iterable[int],
                       mode=RecognitionMode.extended) -> list[tuple[int, RecognizedConstant]]:
    """[ABCD]/[FGHI] for a square with the diagonal point as radiator.

    Each radial triangle is right isosceles with apex E.  A center sits on
    the median EM at EF/EM = 1 - k, where k is its normalized first
    barycentric; the central quadrilateral is a square and the ratio is
    2/(EF/EM)^2.  Centers at E, at infinity or undefined are omitted.
    """
    out = []
    for i in sorted(indices):
        bc = eval_center(reg.defs[i], *SQUARE_TRIANGLE)
        if bc is AT_INFINITY or bc is UNDEFINED:
            continue
        t = 1.0 - bc.u
        if abs(t) < 1e-12:
            continue
        out.append((i, recognize_constant(2.0 / (t * t), mode)))
    return out


# ---------------------------------------------------------------------------
# Reports

def run_lengths(indices: Iterable[int]) -> str:
    """``[122, 123, 124, 125, 140]`` -> ``"122–125, 140"``."""
    xs = sorted(set(indices))
    parts, i = [], 0
    while i < len(xs):
        j = i
        while j + 1 < len(xs) and xs[j + 1] == xs[j] + 1:
            j += 1
        if j - i >= 2:
            parts.append(f"{xs[i]}–{xs[j]}")
        else:
            parts.extend(str(x) for x in xs[i:j + 1])
        i = j + 1
    return ", ".join(parts)


def _visible(findings, include_suppressed: bool):
    rows = sorted(findings, key=RelationFinding.sort_key)
    return rows if include_suppressed else [f for f in rows if f.suppressed_by is None]


def _markdown(findings, include_suppressed: bool, radiators) -> str:
    rows = _visible(findings, include_suppressed)
    rads = sorted(set(radiators or ()) | {f.radiator for f in rows}, key=_RADIATOR_ORDER.get)
    lines: list[str] = []
    head = "| Quadrilateral Type | Relationship | centers |"
    rule = "|---|---|---|"
    if include_suppressed:
        head, rule = head + " suppressed by |", rule + "---|"
    if not rads:
        return "\n".join([head, rule, "| | No relationships were found | |"]) + "\n"
    for r in rads:
        lines += [f"## {r.value}", "", head, rule]
        mine = [f for f in rows if f.radiator is r]
        if not mine:
            lines.append("| | No relationships were found | |" + (" |" if include_suppressed else ""))
        groups: dict[tuple, list[int]] = {}
        for f in mine:
            groups.setdefault((f.shape, f.relation.key(), str(f.relation), f.suppressed_by), []).append(f.center_index)
        for (shape, _, rel, sup), idx in groups.items():
            row = f"| {shape.value} | {rel} | {run_lengths(idx)} |"
            if include_suppressed:
                row += f" {sup or ''} |"
            lines.append(row)
        lines.append("")
    return "\n".join(lines).rstrip("\n") + "\n"


def _csv(findings, include_suppressed: bool) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["shape", "radiator", "center", "relation", "constant", "confirmations", "suppressed_by"])
    for f in _visible(findings, include_suppressed):
        k = f.relation.constant
        w.writerow([f.shape.value, f.radiator.value, f.center_index, f.relation.kind.value,
                    str(k) if k else "", f.confirmations, f.suppressed_by or ""])
    return buf.getvalue()


def emit_report(findings: Sequence[RelationFinding], fmt: str = "md",
                include_suppressed: bool = False, radiators: Iterable = ()) -> bytes:
    """Render findings as markdown tables, CSV rows or a JSON array."""
    fmt = {"markdown": "md"}.get(fmt, fmt)
    if fmt == "md":
        text = _markdown(findings, include_suppressed, [as_radiator(r) for r in radiators])
    elif fmt == "csv":
        text = _csv(findings, include_suppressed)
    elif fmt == "json":
        text = json.dumps([f.to_dict() for f in _visible(findings, include_suppressed)], indent=2) + "\n"
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    return text.encode("utf-8")


def read_findings(data) -> list[RelationFinding]:
    """Parse a JSON findings report."""
    if isinstance(data, (bytes, bytearray)):
        data = data.decode("utf-8")
    return [RelationFinding.from_dict(o) for o in json.loads(data)]
