"""Central quadrilaterals, the relations checked between a reference
quadrilateral and its central quadrilateral, and recognition of the
measured area ratio as an exact constant."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .barycentric import AT_INFINITY, RefTriangle, bary_to_cartesian
from .centerdefs import UNDEFINED, CenterDef, eval_center
from .geomcore import COLLINEAR, CartesianPoint, circle_through, diameter, distance, shoelace_area
from .quadgen import QuadInstance
from .radiators import off_sidelines

P = CartesianPoint

REL_TOL = 1e-7
CONCYCLIC_TOL = 1e-7
DEGENERATE_AREA = 1e-12
COINCIDENT_TOL = 1e-9
EQUILATERAL_TOL = 1e-3
RATIONAL_MAX_DEN = 5
EXTENDED_MAX_DEN = 49
IRRATIONAL_MAX_DEN = 36
IRRATIONAL_MAX_COEF = 1200
RADICANDS = (2, 3)


class _Skipped:
    def __repr__(self) -> str:
        return "SkippedInfinity"

    def __bool__(self) -> bool:
        return False


SKIPPED_INFINITY = _Skipped()


@dataclass(frozen=True)
class CentralQuad:
    points: tuple[P, P, P, P]

    F = property(lambda self: self.points[0])
    G = property(lambda self: self.points[1])
    H = property(lambda self: self.points[2])
    I = property(lambda self: self.points[3])


def radial_triangles(q: QuadInstance, E: P) -> list[tuple[P, P, P]]:
    """EAB, EBC, ECD, EDA."""
    v = q.vertices
    return [(E, v[i], v[(i + 1) % 4]) for i in range(4)]


def near_equilateral(tri: tuple[P, P, P], tol: float = EQUILATERAL_TOL) -> bool:
    s = (distance(tri[0], tri[1]), distance(tri[1], tri[2]), distance(tri[2], tri[0]))
    return max(s) - min(s) < tol * max(s)


def admissible(q: QuadInstance, E: P) -> bool:
    """E is off the sidelines and no radial triangle is nearly equilateral,
    where center formulas are singular or badly conditioned."""
    return off_sidelines(q, E) and not any(near_equilateral(t) for t in radial_triangles(q, E))


def triangle_center(center: CenterDef, tri: tuple[P, P, P], sign: int = 1):
    """Cartesian center of a triangle, ``AT_INFINITY`` or ``UNDEFINED``.

    ``sign`` multiplies the orientation of ``tri``; S and the angles are
    taken negative for a triangle whose signed orientation is negative.
    """
    t = RefTriangle.from_points(*tri)
    bc = eval_center(center, t.a, t.b, t.c, 1 if sign * t.K > 0 else -1)
    if bc is UNDEFINED or bc is AT_INFINITY:
        return bc
    return bary_to_cartesian(t, bc)


def central_quadrilateral(q: QuadInstance, E: P, center: CenterDef):
    """FGHI for radiator ``E``; ``SKIPPED_INFINITY`` if a center is at
    infinity, ``UNDEFINED`` if one is undefined."""
    if not off_sidelines(q, E):
        raise ValueError("radiator lies on a sideline")
    # radial triangles are oriented relative to ABCD
    sign = 1 if signed_area_quad(q) > 0 else -1
    pts = []
    for tri in radial_triangles(q, E):
        x = triangle_center(center, tri, sign)
        if x is AT_INFINITY:
            return SKIPPED_INFINITY
        if x is UNDEFINED:
            return UNDEFINED
        pts.append(x)
    return CentralQuad(tuple(pts))  # type: ignore[arg-type]


def _points(obj) -> Sequence[P]:
    return obj.points if isinstance(obj, CentralQuad) else obj.vertices


def signed_area_quad(obj) -> float:
    """[PQRS] = [PQR] + [RSP], also for self-intersecting orderings."""
    return shoelace_area(_points(obj))


# ---------------------------------------------------------------------------
# Constant recognition

class RecognitionMode(str, enum.Enum):
    rational = "rational"
    extended = "extended"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class RecognizedConstant:
    """``Rational``: p/q.  ``QuadIrrational``: (p + q*sqrt(d))/r.
    ``Unrecognized``: only ``value`` is meaningful."""

    kind: str
    value: float
    p: Optional[int] = None
    q: Optional[int] = None
    d: Optional[int] = None
    r: Optional[int] = None
    residual: float = 0.0

    @property
    def recognized(self) -> bool:
        return self.kind != "Unrecognized"

    @property
    def exact(self) -> float:
        if self.kind == "Rational":
            return self.p / self.q
        if self.kind == "QuadIrrational":
            return (self.p + self.q * math.sqrt(self.d)) / self.r
        return self.value

    def key(self) -> tuple:
        return (self.kind, self.p, self.q, self.d, self.r)

    def same_as(self, other: "RecognizedConstant") -> bool:
        return self.recognized and self.key() == other.key()

    def __str__(self) -> str:
        if self.kind == "Rational":
            return str(self.p) if self.q == 1 else f"{self.p}/{self.q}"
        if self.kind == "QuadIrrational":
            coef = abs(self.q)
            root = f"√{self.d}" if coef == 1 else f"{coef}√{self.d}"
            sign = "+" if self.q > 0 else "-"
            num = f"{self.p}{sign}{root}" if self.p else (root if self.q > 0 else f"-{root}")
            if self.r == 1:
                return num
            return f"({num})/{self.r}" if self.p else f"{num}/{self.r}"
        return f"{self.value:.10g}"

    def to_dict(self) -> dict:
        return {"kind": self.kind, "p": self.p, "q": self.q, "d": self.d, "r": self.r,
                "value": self.exact}

    @classmethod
    def from_dict(cls, obj: dict) -> "RecognizedConstant":
        return cls(obj["kind"], float(obj["value"]), obj.get("p"), obj.get("q"), obj.get("d"), obj.get("r"))

    @classmethod
    def rational(cls, frac: Fraction) -> "RecognizedConstant":
        return cls("Rational", float(frac), frac.numerator, frac.denominator)


def _rational(x: float, max_den: int) -> Optional[RecognizedConstant]:
    for den in range(1, max_den + 1):
        num = round(x * den)
        res = abs(x - num / den)
        if res < REL_TOL:
            f = Fraction(num, den)
            return RecognizedConstant("Rational", x, f.numerator, f.denominator, residual=res)
    return None


_QS = np.concatenate([np.arange(1, IRRATIONAL_MAX_COEF + 1), -np.arange(1, IRRATIONAL_MAX_COEF + 1)])
_ORDER = np.argsort(np.abs(_QS), kind="stable")
_QS = _QS[_ORDER]


def _quad_irrational(x: float) -> Optional[RecognizedConstant]:
    """Lowest-height (p + q*sqrt(d))/r within tolerance of ``x``, where the
    height is max(|p|, |q|, r); ties go to the smaller r, then |q|."""
    best = None
    for r in range(1, IRRATIONAL_MAX_DEN + 1):
        for d in RADICANDS:
            qsd = _QS * math.sqrt(d)
            ps = np.rint(x * r - qsd)
            res = np.abs(x - (ps + qsd) / r)
            ok = np.flatnonzero((res < REL_TOL) & (np.abs(ps) <= IRRATIONAL_MAX_COEF))
            for i in ok:
                p, qq = int(ps[i]), int(_QS[i])
                if math.gcd(math.gcd(p, qq), r) != 1:
                    continue
                rank = (max(abs(p), abs(qq), r), r, abs(qq), d)
                if best is None or rank < best[0]:
                    best = (rank, p, qq, d, r, float(res[i]))
    if best is None:
        return None
    _, p, qq, d, r, res = best
    return RecognizedConstant("QuadIrrational", x, p, qq, d, r, residual=res)


def recognize_constant(x: float, mode=RecognitionMode.rational) -> RecognizedConstant:
    """Identify ``x`` as p/q (q <= 5) or, in extended mode, as p/q with
    q <= 49 or (p + q*sqrt(d))/r with d in {2, 3}, r <= 36.

    Simpler forms win: rationals before irrationals, the smallest
    denominator among rationals, the lowest height among irrationals.
    """
    mode = RecognitionMode(str(mode))
    if not math.isfinite(x):
        return RecognizedConstant("Unrecognized", x)
    max_den = RATIONAL_MAX_DEN if mode is RecognitionMode.rational else EXTENDED_MAX_DEN
    found = _rational(x, max_den)
    if found is None and mode is RecognitionMode.extended:
        found = _quad_irrational(x)
    return found if found is not None else RecognizedConstant("Unrecognized", x)


# ---------------------------------------------------------------------------
# Relations

class RelationKind(str, enum.Enum):
    SameArea = "SameArea"
    AreaRatio = "AreaRatio"
    Congruent = "Congruent"
    Similar = "Similar"
    SamePerimeter = "SamePerimeter"
    CongruentCircumcircles = "CongruentCircumcircles"
    SameCircumcircle = "SameCircumcircle"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Relation:
    kind: RelationKind
    constant: Optional[RecognizedConstant] = None

    def key(self) -> tuple:
        return (self.kind.value, self.constant.key() if self.constant else None)

    def __str__(self) -> str:
        if self.kind is RelationKind.AreaRatio:
            return f"[ABCD]={self.constant}[FGHI]"
        return {
            RelationKind.SameArea: "[ABCD]=[FGHI]",
            RelationKind.Congruent: "ABCD≅FGHI",
            RelationKind.Similar: "ABCD∼FGHI",
            RelationKind.SamePerimeter: "∂ABCD=∂FGHI",
            RelationKind.CongruentCircumcircles: "⊙ABCD≅⊙FGHI",
            RelationKind.SameCircumcircle: "⊙ABCD=⊙FGHI",
        }[self.kind]


def sextuple(pts: Sequence[P]) -> tuple[float, ...]:
    """Four sides then two diagonals."""
    return (distance(pts[0], pts[1]), distance(pts[1], pts[2]), distance(pts[2], pts[3]),
            distance(pts[3], pts[0]), distance(pts[0], pts[2]), distance(pts[1], pts[3]))


def dihedral_orderings(pts: Sequence[P]) -> list[tuple[P, ...]]:
    out = []
    for k in range(4):
        rot = tuple(pts[(i + k) % 4] for i in range(4))
        out.append(rot)
        out.append((rot[0], rot[3], rot[2], rot[1]))
    return out


def _close(x: float, y: float, tol: float) -> bool:
    return abs(x - y) <= tol * max(abs(x), abs(y))


def _sides_match(s1: Sequence[float], s2: Sequence[float], k: float, tol: float) -> bool:
    """Necessary condition: the side multisets agree up to the scale ``k``."""
    return all(_close(k * x, y, tol) for x, y in zip(sorted(s1[:4]), sorted(s2[:4])))


def congruent(p1: Sequence[P], p2: Sequence[P], tol: float = REL_TOL) -> bool:
    s1 = sextuple(p1)
    if not _sides_match(s1, sextuple(p2), 1.0, tol):
        return False
    return any(all(_close(x, y, tol) for x, y in zip(s1, sextuple(o)))
               for o in dihedral_orderings(p2))


def similar(p1: Sequence[P], p2: Sequence[P], tol: float = REL_TOL) -> bool:
    s1, s0 = sextuple(p1), sextuple(p2)
    if not _sides_match(s1, s0, sum(s0) / sum(s1), tol):
        return False
    for o in dihedral_orderings(p2):
        s2 = sextuple(o)
        k = sum(s2) / sum(s1)
        if k > 0 and all(_close(k * x, y, tol) for x, y in zip(s1, s2)):
            return True
    return False


def perimeter(pts: Sequence[P]) -> float:
    return sum(sextuple(pts)[:4])


def circumcircle(pts: Sequence[P], tol: float = CONCYCLIC_TOL):
    """Circle through four points, or None when they are not concyclic."""
    c = circle_through(pts[0], pts[1], pts[2])
    if c is COLLINEAR:
        return None
    if abs(distance(c.center, pts[3]) - c.radius) >= tol * diameter(pts):
        return None
    return c


@dataclass(frozen=True)
class Measurement:
    """Raw, unrecognized comparison of ABCD with FGHI."""

    area_ratio: Optional[float]
    congruent: bool
    similar: bool
    same_perimeter: bool
    congruent_circumcircles: bool
    same_circumcircle: bool


NOTHING = Measurement(None, False, False, False, False, False)


def coincident_vertices(pts: Sequence[P], scale: float, tol: float = COINCIDENT_TOL) -> bool:
    return any(distance(pts[i], pts[j]) < tol * scale for i in range(4) for j in range(i + 1, 4))


def measure(q: QuadInstance, c: CentralQuad, tol: float = REL_TOL) -> Measurement:
    """Compare ABCD with FGHI.  A central quadrilateral with two coincident
    vertices is not a quadrilateral and shows no relation."""
    qp, cp = q.vertices, c.points
    diam = q.diameter
    if coincident_vertices(cp, diam):
        return NOTHING
    fghi = abs(signed_area_quad(c))
    ratio = abs(signed_area_quad(q)) / fghi if fghi >= DEGENERATE_AREA * diam * diam else None
    cc1, cc2 = circumcircle(qp), circumcircle(cp)
    cong_circ = same_circ = False
    if cc1 is not None and cc2 is not None:
        cong_circ = _close(cc1.radius, cc2.radius, tol)
        same_circ = cong_circ and distance(cc1.center, cc2.center) <= tol * cc1.radius
    return Measurement(
        area_ratio=ratio,
        congruent=congruent(qp, cp, tol),
        similar=similar(qp, cp, tol),
        same_perimeter=_close(perimeter(qp), perimeter(cp), tol),
        congruent_circumcircles=cong_circ,
        same_circumcircle=same_circ,
    )


def relations_from(m: Measurement, mode=RecognitionMode.rational) -> list[Relation]:
    out: list[Relation] = []
    if m.area_ratio is not None:
        k = recognize_constant(m.area_ratio, mode)
        if k.recognized:
            if k.kind == "Rational" and k.p == 1 and k.q == 1:
                out.append(Relation(RelationKind.SameArea))
            else:
                out.append(Relation(RelationKind.AreaRatio, k))
    flags = [(m.congruent, RelationKind.Congruent), (m.similar, RelationKind.Similar),
             (m.same_perimeter, RelationKind.SamePerimeter),
             (m.congruent_circumcircles, RelationKind.CongruentCircumcircles),
             (m.same_circumcircle, RelationKind.SameCircumcircle)]
    out.extend(Relation(kind) for ok, kind in flags if ok)
    return out


def detect_relations(q: QuadInstance, c: CentralQuad, mode=RecognitionMode.rational) -> list[Relation]:
    """Every checked relation that holds between ``q`` and ``c``."""
    return relations_from(measure(q, c), mode)


# ---------------------------------------------------------------------------
# Residuals, for reporting how closely a relation holds

def _rel_diff(x: float, y: float) -> float:
    scale = max(abs(x), abs(y))
    return abs(x - y) / scale if scale > 0 else 0.0


def congruence_residual(p1: Sequence[P], p2: Sequence[P]) -> float:
    s1 = sextuple(p1)
    return min(max(_rel_diff(x, y) for x, y in zip(s1, sextuple(o))) for o in dihedral_orderings(p2))


def similarity_residual(p1: Sequence[P], p2: Sequence[P]) -> float:
    s1 = sextuple(p1)
    best = math.inf
    for o in dihedral_orderings(p2):
        s2 = sextuple(o)
        k = sum(s2) / sum(s1)
        best = min(best, max(_rel_diff(k * x, y) for x, y in zip(s1, s2)))
    return best


def relation_residual(kind, p1: Sequence[P], p2: Sequence[P], expected: Optional[float] = None) -> float:
    """Relative defect of relation ``kind`` between point lists ``p1``, ``p2``;
    ``expected`` is the area ratio for AreaRatio."""
    kind = RelationKind(str(kind))
    if kind in (RelationKind.SameArea, RelationKind.AreaRatio):
        want = 1.0 if kind is RelationKind.SameArea else expected
        a2 = abs(shoelace_area(p2))
        if a2 == 0.0:
            return math.inf
        return _rel_diff(abs(shoelace_area(p1)) / a2, want)
    if kind is RelationKind.Congruent:
        return congruence_residual(p1, p2)
    if kind is RelationKind.Similar:
        return similarity_residual(p1, p2)
    if kind is RelationKind.SamePerimeter:
        return _rel_diff(perimeter(p1), perimeter(p2))
    c1, c2 = circumcircle(p1), circumcircle(p2)
    if c1 is None or c2 is None:
        return math.inf
    res = _rel_diff(c1.radius, c2.radius)
    if kind is RelationKind.SameCircumcircle:
        res = max(res, distance(c1.center, c2.center) / c1.radius)
    return res


# ---------------------------------------------------------------------------
# Shape checks on a central quadrilateral

def side_spread(pts: Sequence[P]) -> float:
    """(max side - min side) / max side."""
    s = sextuple(pts)[:4]
    return (max(s) - min(s)) / max(s)


def is_square(pts: Sequence[P], tol: float = 1e-8) -> bool:
    s = sextuple(pts)
    return side_spread(pts) < tol and _close(s[4], s[5], tol)


def is_kite(pts: Sequence[P], tol: float = 1e-8) -> bool:
    """Two pairs of adjacent equal sides, in either pairing."""
    a, b, c, d = sextuple(pts)[:4]
    return (_close(a, b, tol) and _close(c, d, tol)) or (_close(b, c, tol) and _close(d, a, tol))


def is_parallelogram(pts: Sequence[P], tol: float = 1e-8) -> bool:
    """Opposite sides equal and parallel."""
    ok = True
    for i in (0, 1):
        u = pts[i + 1] - pts[i]
        w = pts[(i + 3) % 4] - pts[(i + 2) % 4]
        scale = max(math.hypot(*u), math.hypot(*w))
        ok &= math.hypot(u.x + w.x, u.y + w.y) <= tol * scale
    return ok

