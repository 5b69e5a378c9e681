"""Exact audits of the linear and affine subspace concentration inequalities.

Because the cone volume measure of a polytope is atomic, the left-hand side
for a subspace only depends on which polar vertices it contains, and
shrinking a subspace to the hull of those vertices can only lower the
right-hand side. Auditing every distinct hull of atom subsets (the flats of
the affine or linear matroid on the polar vertices) is therefore exhaustive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .exact import (
    AffineHull,
    GeometryError,
    dot,
    linear_hull,
    affine_hull,
    rank_and_solve,
    unit_vector,
    zero_vector,
)
from .measure import ConeVolumeMeasure, cone_volumes, measure_on_affine
from .polytope import Polytope, is_pyramid

__all__ = [
    "LINEAR",
    "AFFINE",
    "DEFAULT_MAX_ATOMS",
    "CenteringRequired",
    "AtomCapExceeded",
    "PreconditionError",
    "SubspaceCandidate",
    "Diagnosis",
    "AuditRow",
    "AuditReport",
    "enumerate_candidates",
    "concentration_bound",
    "check_scc",
    "check_subspace",
    "equality_diagnosis",
]

LINEAR = "linear"
AFFINE = "affine"
DEFAULT_MAX_ATOMS = 20


class CenteringRequired(GeometryError):
    pass


class AtomCapExceeded(GeometryError):
    pass


class PreconditionError(GeometryError):
    pass


@dataclass(frozen=True)
class SubspaceCandidate:
    kind: str
    generators: tuple  # maximal set of atom indices inside the hull
    hull: AffineHull

    @property
    def dim(self) -> int:
        return self.hull.dim


@dataclass(frozen=True)
class Diagnosis:
    case: str  # pyramid_with_base | pyramid_with_apex | complementary_subspace | uncharacterized
    confirmed: bool
    detail: dict = field(default_factory=dict)


@dataclass
class AuditRow:
    candidate: SubspaceCandidate
    lhs: Fraction
    rhs: Fraction
    total: Fraction
    diagnosis: Optional[Diagnosis] = None

    @property
    def ratio(self) -> Fraction:
        """lhs / rhs; the inequality holds iff this is at most 1."""
        return self.lhs / self.rhs

    @property
    def share(self) -> Fraction:
        """Fraction of the total measure carried by the subspace."""
        return self.lhs / self.total

    @property
    def tight(self) -> bool:
        return self.lhs == self.rhs

    @property
    def violated(self) -> bool:
        return self.lhs > self.rhs


@dataclass
class AuditReport:
    kind: str
    dim: int
    total: Fraction
    rows: list

    @property
    def passed(self) -> bool:
        return not any(r.violated for r in self.rows)

    @property
    def max_ratio(self) -> Fraction:
        return max((r.ratio for r in self.rows), default=Fraction(0))

    @property
    def tight_rows(self) -> list:
        return [r for r in self.rows if r.tight]

    @property
    def violations(self) -> list:
        return [r for r in self.rows if r.violated]


class _Flat:
    """Integer description of a flat: ``<k, x> == off`` for every kernel row ``k``.

    ``span`` lists the atom indices that were used to generate the flat; they
    are affinely (or linearly) independent.
    """

    __slots__ = ("kernel", "offsets", "span")

    def __init__(self, kernel, offsets, span):
        self.kernel = kernel
        self.offsets = offsets
        self.span = span

    def contains(self, x) -> bool:
        return all(sum(a * b for a, b in zip(k, x)) == o for k, o in zip(self.kernel, self.offsets))

    def cut(self, direction, anchor, atom: int) -> "_Flat":
        """Flat enlarged by ``direction``: keep only kernel rows orthogonal to it."""
        s = [sum(a * b for a, b in zip(k, direction)) for k in self.kernel]
        piv = next(i for i, v in enumerate(s) if v)
        kp, sp = self.kernel[piv], s[piv]
        kernel = []
        for k, si in zip(self.kernel, s):
            if k is kp:
                continue
            row = [sp * a - si * b for a, b in zip(k, kp)] if si else list(k)
            g = math.gcd(*row)
            if g > 1:
                row = [a // g for a in row]
            kernel.append(row)
        offsets = [sum(a * b for a, b in zip(k, anchor)) for k in kernel]
        return _Flat(kernel, offsets, self.span + (atom,))


def _integer_atoms(points) -> list:
    # a common positive scale preserves every affine and linear dependency
    lcm = math.lcm(*(x.denominator for p in points for x in p))
    return [[int(x * lcm) for x in p] for p in points]


def enumerate_candidates(
    mu: ConeVolumeMeasure, kind: str, max_atoms: int = DEFAULT_MAX_ATOMS
) -> list:
    """Every distinct proper hull spanned by a nonempty subset of atoms.

    Flats are grown one dimension at a time: each flat is extended by an atom
    outside it and closed under membership. Extensions landing in a flat that
    was already reached from the same parent are skipped.
    """
    if kind not in (LINEAR, AFFINE):
        raise ValueError(f"unknown subspace kind {kind!r}")
    pts = mu.points
    m, n = len(pts), mu.dim
    if m > max_atoms:
        raise AtomCapExceeded(f"{m} atoms exceed the enumeration cap of {max_atoms}")
    if kind == LINEAR and n < 2:
        return []
    ipts = _integer_atoms(pts)
    identity = [[int(i == k) for k in range(n)] for i in range(n)]
    zero = [0] * n

    def members(flat):
        return tuple(k for k in range(m) if flat.contains(ipts[k]))

    seen: dict = {}
    layer = []
    for i in range(m):
        if kind == AFFINE:
            flat = _Flat(identity, list(ipts[i]), (i,))
        else:
            flat = _Flat(identity, zero, ()).cut(ipts[i], zero, i)
        gens = members(flat)
        if gens not in seen:
            seen[gens] = flat
            layer.append((gens, flat))
    dim = 0 if kind == AFFINE else 1
    while layer and dim < n - 1:
        nxt = []
        for gens, flat in layer:
            covered = set(gens)
            for j in range(m):
                if j in covered:
                    continue
                if kind == AFFINE:
                    base = ipts[flat.span[0]]
                    new = flat.cut([a - b for a, b in zip(ipts[j], base)], base, j)
                else:
                    new = flat.cut(ipts[j], zero, j)
                new_gens = members(new)
                covered.update(new_gens)
                if new_gens not in seen:
                    seen[new_gens] = new
                    nxt.append((new_gens, new))
        layer = nxt
        dim += 1

    cands = []
    for gens, flat in seen.items():
        spanning = [pts[i] for i in flat.span]
        hull = linear_hull(spanning, n) if kind == LINEAR else affine_hull(spanning)
        cands.append(SubspaceCandidate(kind, gens, hull))
    cands.sort(key=lambda c: (c.dim, c.generators))
    return cands


def concentration_bound(kind: str, sub_dim: int, n: int, total: Fraction) -> Fraction:
    if kind == LINEAR:
        return Fraction(sub_dim, n) * total
    return Fraction(sub_dim + 1, n + 1) * total


def _require_centered(p: Polytope, allow_noncentered: bool) -> None:
    if not allow_noncentered and any(p.centroid):
        raise CenteringRequired(
            "the concentration inequalities are stated for centered polytopes; "
            "center the input first or pass allow_noncentered"
        )


def check_scc(
    p: Polytope,
    kind: str,
    allow_noncentered: bool = False,
    max_atoms: int = DEFAULT_MAX_ATOMS,
    diagnose: bool = True,
) -> AuditReport:
    """Audit the subspace concentration inequality over all candidate hulls."""
    _require_centered(p, allow_noncentered)
    mu = cone_volumes(p)
    total = mu.total
    rows = []
    for cand in enumerate_candidates(mu, kind, max_atoms):
        lhs = sum((mu.atoms[i][1] for i in cand.generators), Fraction(0))
        rhs = concentration_bound(kind, cand.dim, p.dim, total)
        rows.append(AuditRow(cand, lhs, rhs, total))
    if diagnose:
        for row in rows:
            if row.tight:
                row.diagnosis = equality_diagnosis(p, row.candidate, row)
    return AuditReport(kind, p.dim, total, rows)


def check_subspace(p: Polytope, kind: str, hull: AffineHull) -> AuditRow:
    """One audit row for an arbitrary (not necessarily atom-spanned) subspace."""
    mu = cone_volumes(p)
    gens = tuple(i for i, (a, _) in enumerate(mu.atoms) if hull.contains(a))
    lhs = measure_on_affine(mu, hull)
    rhs = concentration_bound(kind, hull.dim, p.dim, mu.total)
    return AuditRow(SubspaceCandidate(kind, gens, hull), lhs, rhs, mu.total)


def equality_diagnosis(p: Polytope, cand: SubspaceCandidate, row: AuditRow) -> Diagnosis:
    """Explain a tight row by the characterized equality cases, where one applies."""
    if not row.tight:
        raise PreconditionError("equality diagnosis requested for a row that is not tight")
    n = p.dim
    if cand.kind == LINEAR:
        return _complement_diagnosis(p, cand)
    if cand.dim == 0:
        (i,) = cand.generators
        pairs = [(v, f) for v, f in is_pyramid(p) if f == i]
        detail = {"base_facet": i}
        if pairs:
            detail["apex_vertex"] = pairs[0][0]
        return Diagnosis("pyramid_with_base", bool(pairs), detail)
    if cand.dim == n - 1 and not cand.hull.through_origin:
        atoms = [p.facets[i].normal for i in cand.generators]
        _, v_a = rank_and_solve(atoms, (Fraction(1),) * len(atoms))
        if all(dot(v_a, f.normal) <= 1 for f in p.facets):
            detail = {"apex": v_a}
            try:
                k = p.vertices.index(v_a)
            except ValueError:
                k = -1
            confirmed = k >= 0 and any(v == k for v, _ in is_pyramid(p))
            if confirmed:
                detail["apex_vertex"] = k
            return Diagnosis("pyramid_with_apex", confirmed, detail)
    return Diagnosis("uncharacterized", False, {})


def _complement_diagnosis(p: Polytope, cand: SubspaceCandidate) -> Diagnosis:
    n = p.dim
    rest = [i for i in range(len(p.facets)) if i not in cand.generators]
    if not rest:
        return Diagnosis("complementary_subspace", False, {})
    rest_span = linear_hull([p.facets[i].normal for i in rest], n)
    own = list(cand.hull.directions)
    joint_rank, _ = rank_and_solve(own + list(rest_span.directions))
    if joint_rank != cand.dim + rest_span.dim:
        return Diagnosis("complementary_subspace", False, {"outside_atoms": rest})
    basis = list(rest_span.directions)
    for k in range(n):
        if len(own) + len(basis) == n:
            break
        e = unit_vector(n, k)
        if rank_and_solve(own + basis + [e])[0] > len(own) + len(basis):
            basis.append(e)
    complement = AffineHull(zero_vector(n), tuple(basis))
    return Diagnosis(
        "complementary_subspace",
        True,
        {"complement_generators": rest, "complement": complement},
    )
