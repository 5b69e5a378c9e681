"""JSON documents exchanged by the command line tool.

All scalars travel as rational literal strings (``"-3/4"``, ``"2"``) so that
documents round-trip bit-exactly.
"""

from __future__ import annotations

from fractions import Fraction

from .audit import AuditReport, AuditRow, Diagnosis
from .exact import AffineHull, GeometryError, format_rational, parse_rational
from .lifting import LiftTower, chain_bounds, lift_checks, linear_measure, star_pyramid_volume
from .measure import ConeVolumeMeasure
from .polytope import Polytope, convex_hull

__all__ = [
    "DocumentError",
    "vec_doc",
    "polytope_doc",
    "polytope_from_doc",
    "points_from_doc",
    "measure_doc",
    "hull_doc",
    "diagnosis_doc",
    "row_doc",
    "report_doc",
    "tower_doc",
]


class DocumentError(GeometryError):
    """Input JSON does not follow the documented schema."""


def vec_doc(v) -> list:
    return [format_rational(x) for x in v]


def polytope_doc(p: Polytope) -> dict:
    return {
        "dim": p.dim,
        "vertices": [vec_doc(v) for v in p.vertices],
        "facets": [{"a": vec_doc(f.normal), "incident": list(f.incident)} for f in p.facets],
    }


def points_from_doc(doc) -> list:
    if not isinstance(doc, dict):
        raise DocumentError("expected a JSON object with 'dim' and 'vertices'")
    dim = doc.get("dim")
    pts = doc.get("vertices")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise DocumentError("'dim' must be a positive integer")
    if not isinstance(pts, list) or not pts:
        raise DocumentError("'vertices' must be a non-empty list")
    out = []
    for row in pts:
        if not isinstance(row, list) or len(row) != dim:
            raise DocumentError(f"every vertex must be a list of {dim} rational literals")
        try:
            out.append(tuple(parse_rational(x) for x in row))
        except ValueError as exc:
            raise DocumentError(str(exc)) from None
    return out


def polytope_from_doc(doc) -> Polytope:
    """Build a polytope from a vertex document; a supplied facet list must match."""
    p = convex_hull(points_from_doc(doc))
    if "facets" in doc:
        try:
            given = sorted(
                (tuple(parse_rational(x) for x in f["a"]), tuple(f["incident"])) for f in doc["facets"]
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise DocumentError(f"malformed facet list: {exc}") from None
        if given != sorted((f.normal, f.incident) for f in p.facets):
            raise DocumentError("the supplied facets do not match the hull of the vertices")
    return p


def measure_doc(mu: ConeVolumeMeasure) -> dict:
    return {
        "atoms": [{"a": vec_doc(a), "w": format_rational(w)} for a, w in mu.atoms],
        "total": format_rational(mu.total),
    }


def hull_doc(h: AffineHull) -> dict:
    return {"base": vec_doc(h.base), "directions": [vec_doc(d) for d in h.directions]}


def _detail_value(value):
    if isinstance(value, AffineHull):
        return hull_doc(value)
    if isinstance(value, tuple) and value and isinstance(value[0], Fraction):
        return vec_doc(value)
    if isinstance(value, Fraction):
        return format_rational(value)
    return value


def diagnosis_doc(d: Diagnosis) -> dict:
    out = {"case": d.case, "confirmed": d.confirmed}
    out.update({k: _detail_value(v) for k, v in d.detail.items()})
    return out


def row_doc(row: AuditRow) -> dict:
    c = row.candidate
    return {
        "generators": list(c.generators),
        "dim": c.dim,
        "hull": hull_doc(c.hull),
        "lhs": format_rational(row.lhs),
        "rhs": format_rational(row.rhs),
        "ratio": format_rational(row.ratio),
        "share": format_rational(row.share),
        "tight": row.tight,
        "diagnosis": diagnosis_doc(row.diagnosis) if row.diagnosis else None,
    }


def report_doc(report: AuditReport) -> dict:
    return {
        "kind": report.kind,
        "dim": report.dim,
        "pass": report.passed,
        "total": format_rational(report.total),
        "max_ratio": format_rational(report.max_ratio),
        "tight": [list(r.candidate.generators) for r in report.tight_rows],
        "violations": [row_doc(r) for r in report.violations],
        "rows": [row_doc(r) for r in report.rows],
    }


def tower_doc(tower: LiftTower) -> dict:
    bounds = {b.j: b for b in chain_bounds(tower)}
    levels = []
    for level in tower.levels:
        j = level.j
        entry = {
            "j": j,
            "dim": level.polytope.dim,
            "volume": format_rational(level.polytope.volume),
            "tracked": list(level.tracked),
            "tracked_normals": [vec_doc(level.polytope.facets[i].normal) for i in level.tracked],
            "cone_volume": format_rational(star_pyramid_volume(tower, j)),
            "linear_measure": format_rational(linear_measure(tower, j)),
            "subspace_dim": level.subspace.dim,
            "bound": None,
        }
        if j in bounds:
            b = bounds[j]
            entry["bound"] = format_rational(b.lifted)
            entry["closed_form_bound"] = format_rational(b.closed_form)
            entry["checks"] = lift_checks(tower.levels[j - 1].polytope, level.polytope)
            entry["checks"]["bounds_agree"] = b.agrees
        levels.append(entry)
    return {
        "track": {"generators": list(tower.track.generators), "dim": tower.track.dim},
        "levels": levels,
        "limit_bound": format_rational(tower.limit_bound),
        "measure": format_rational(tower.measure),
    }
