"""Command line entry point: ``cqexplore sweep|square-table|classify|verify``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Iterable, Optional

from .centerdefs import (
    CenterRegistry,
    classify_isosceles_behavior,
    classify_right_triangle_ratio,
    load_registry,
)
from .explorer import (
    ConfigError,
    SweepConfig,
    emit_report,
    read_findings,
    square_ratio_table,
    sweep,
    verify_findings,
)
from .quadgen import SHAPES
from .radiators import RADIATORS
from .relations import recognize_constant


def parse_ranges(text: str, available: Iterable[int]) -> set[int]:
    """``"all"`` or a comma list of integers and ranges like ``146-153``."""
    available = set(available)
    if text.strip().lower() == "all":
        return available
    out: set[int] = set()
    for part in text.replace("–", "-").split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            out.update(range(int(lo), int(hi) + 1))
        else:
            out.add(int(part))
    return out


def _names(text: str, universe) -> set:
    if text.strip().lower() == "all":
        return set(universe)
    return {t.strip() for t in text.split(",") if t.strip()}


def _write(data: bytes) -> None:
    sys.stdout.buffer.write(data)
    sys.stdout.flush()


def _table(header: list[str], rows: list[list], fmt: str) -> bytes:
    if fmt == "json":
        return (json.dumps([dict(zip(header, r)) for r in rows], indent=2) + "\n").encode()
    if fmt == "csv":
        lines = [",".join(header)] + [",".join(str(x) for x in r) for r in rows]
        return ("\n".join(lines) + "\n").encode()
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    lines += ["| " + " | ".join(str(x) for x in r) + " |" for r in rows]
    return ("\n".join(lines) + "\n").encode()


def cmd_sweep(args, reg: CenterRegistry) -> int:
    cfg = SweepConfig(
        shapes=_names(args.shapes, SHAPES),
        radiators=_names(args.radiators, RADIATORS),
        centers=parse_ranges(args.centers, reg.indices()),
        samples_per_shape=args.samples,
        base_seed=args.seed,
        mode=args.mode,
    )
    result = sweep(cfg, reg, workers=args.workers)
    _write(emit_report(result.findings, args.format, args.include_suppressed, cfg.radiators))
    return 0


def cmd_square_table(args, reg: CenterRegistry) -> int:
    idx = parse_ranges(args.centers, reg.indices())
    missing = sorted(idx - set(reg.indices()))
    if missing:
        raise ConfigError(f"center indices not in registry: {missing}")
    rows = [[i, str(k), k.kind] for i, k in square_ratio_table(reg, idx, args.mode)]
    _write(_table(["center", "[ABCD]/[FGHI]", "kind"], rows, args.format))
    return 0


def cmd_classify(args, reg: CenterRegistry) -> int:
    idx = sorted(parse_ranges(args.centers, reg.indices()) & set(reg.indices()))
    rows = []
    if args.kind == "right":
        for i in idx:
            b = classify_right_triangle_ratio(reg.defs[i])
            if b.kind == "NotOnMedian":
                continue
            ratio = str(recognize_constant(b.ratio, "extended")) if b.constant else ""
            rows.append([i, b.kind, ratio])
        header = ["center", "position", "AM/AX"]
    else:
        for i in idx:
            b = classify_isosceles_behavior(reg.defs[i])
            if b.kind == "AtInfinity" and i in reg.known_at_infinity:
                b = type(b)("AlwaysAtInfinity")
            ratio = str(recognize_constant(b.ratio, "extended")) if b.constant else ""
            if b.kind == "Other" and not b.constant:
                continue
            rows.append([i, b.kind, ratio])
        header = ["center", "position", "XM/AM"]
    _write(_table(header, rows, args.format))
    return 0


def cmd_verify(args, reg: CenterRegistry) -> int:
    with open(args.claims, "rb") as fh:
        findings = read_findings(fh.read())
    missing = sorted({f.center_index for f in findings} - set(reg.indices()))
    if missing:
        raise ConfigError(f"center indices not in registry: {missing}")
    failed = 0
    for f, ok in verify_findings(findings, reg, args.samples, args.seed):
        failed += not ok
        k = f.relation.constant
        rel = f.relation.kind.value + (f" {k}" if k else "")
        print(f"{'OK  ' if ok else 'FAIL'} {f.shape.value} {f.radiator.value} X{f.center_index} {rel}")
    print(f"{len(findings) - failed}/{len(findings)} claims confirmed")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cqexplore", description="Central quadrilateral explorer")
    p.add_argument("--center-file", help="center definitions (default: $CQ_CENTER_FILE or bundled)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sweep", help="search for relations")
    s.add_argument("--shapes", default="all")
    s.add_argument("--radiators", default="all")
    s.add_argument("--centers", default="all")
    s.add_argument("--samples", type=int, default=5)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--mode", choices=["rational", "extended"], default="rational")
    s.add_argument("--format", choices=["md", "csv", "json"], default="md")
    s.add_argument("--include-suppressed", action="store_true")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_sweep)

    t = sub.add_parser("square-table", help="area ratios for squares with the diagonal point")
    t.add_argument("--centers", default="all")
    t.add_argument("--mode", choices=["rational", "extended"], default="extended")
    t.add_argument("--format", choices=["md", "csv", "json"], default="md")
    t.set_defaults(func=cmd_square_table)

    c = sub.add_parser("classify", help="center positions in right or isosceles triangles")
    c.add_argument("--kind", choices=["right", "isosceles"], required=True)
    c.add_argument("--centers", default="all")
    c.add_argument("--format", choices=["md", "csv", "json"], default="md")
    c.set_defaults(func=cmd_classify)

    v = sub.add_parser("verify", help="re-check a JSON findings file on fresh samples")
    v.add_argument("--claims", required=True)
    v.add_argument("--samples", type=int, default=5)
    v.add_argument("--seed", type=int, default=1)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        reg = load_registry(args.center_file)
        return args.func(args, reg)
    except (ConfigError, ValueError, OSError) as exc:
        print(f"cqexplore: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
