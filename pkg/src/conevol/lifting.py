"""Pyramid lifts and the tower of lifted polytopes.

``lift_once`` maps ``K ⊂ R^n`` to ``conv(K × {1} ∪ {-(n+1) e_{n+1}})``. Iterating it
gives a tower ``K^(0) = K, K^(1), ...``; a set of facets of ``K`` (those whose
polar vertices lie in an affine subspace ``A``) is followed up the tower through
the embedding ``phi_k(x) = ((k+2)/(k+1) x, -1/(k+1))`` of polar vertices.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Union

from .audit import AFFINE, LINEAR, SubspaceCandidate, check_subspace
from .exact import (
    AffineHull,
    DimensionMismatch,
    GeometryError,
    Vector,
    add,
    affine_hull,
    linear_hull,
    scale,
)
from .measure import cone_volumes
from .polytope import Polytope, convex_hull

__all__ = [
    "DEPTH_ENV",
    "DEFAULT_MAX_DEPTH",
    "DepthCapExceeded",
    "LiftError",
    "phi_embed",
    "psi_embed",
    "lift_once",
    "LiftLevel",
    "LiftTower",
    "ChainBound",
    "track_candidate",
    "build_tower",
    "star_pyramid_volume",
    "chain_bounds",
    "linear_measure",
    "expected_lift_normals",
    "lift_checks",
]

DEPTH_ENV = "CONEVOL_MAX_DEPTH"
DEFAULT_MAX_DEPTH = 4


class DepthCapExceeded(GeometryError):
    pass


class LiftError(GeometryError):
    """A lifted polytope lacks a facet the lift construction guarantees."""


def default_max_depth() -> int:
    return int(os.environ.get(DEPTH_ENV, DEFAULT_MAX_DEPTH))


def phi_embed(k: int, a: Vector) -> Vector:
    if k < 1 or len(a) != k:
        raise DimensionMismatch(f"phi_{k} expects a vector of dimension {k}, got {len(a)}")
    return scale(Fraction(k + 2, k + 1), a) + (Fraction(-1, k + 1),)


def psi_embed(n: int, j: int, a: Vector) -> Vector:
    """``phi_{n+j-1} ∘ ... ∘ phi_n``; the identity for ``j == 0``."""
    for k in range(n, n + j):
        a = phi_embed(k, a)
    return a


@lru_cache(maxsize=256)
def lift_once(p: Polytope, allow_noncentered: bool = False) -> Polytope:
    if not allow_noncentered and any(p.centroid):
        raise GeometryError("lifting is only meaningful for centered polytopes")
    n = p.dim
    apex = (Fraction(0),) * n + (Fraction(-(n + 1)),)
    return convex_hull([v + (Fraction(1),) for v in p.vertices] + [apex])


@dataclass(frozen=True)
class LiftLevel:
    j: int
    polytope: Polytope
    tracked: tuple  # facet indices of this level's polytope
    subspace: AffineHull  # lin(psi(A)) in R^{n+j}


@dataclass(frozen=True)
class LiftTower:
    base: Polytope
    track: SubspaceCandidate
    levels: tuple

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    @property
    def measure(self) -> Fraction:
        mu = cone_volumes(self.base)
        return sum((mu.atoms[i][1] for i in self.track.generators), Fraction(0))

    @property
    def limit_bound(self) -> Fraction:
        return Fraction(self.track.dim + 1, self.base.dim + 1) * self.base.volume


@dataclass(frozen=True)
class ChainBound:
    j: int
    lifted: Fraction  # (dim A + 1)/(n+j) * vol(K^(j))
    closed_form: Fraction  # (dim A + 1)(n+j+1) / ((n+j)(n+1)) * vol(K)

    @property
    def agrees(self) -> bool:
        return self.lifted == self.closed_form


def track_candidate(p: Polytope, facets: Iterable[int]) -> SubspaceCandidate:
    """Affine hull of the chosen facets' polar vertices, with every atom it contains."""
    idx = sorted(set(facets))
    if not idx:
        raise GeometryError("a track needs at least one facet")
    hull = affine_hull([p.facets[i].normal for i in idx])
    gens = tuple(i for i, f in enumerate(p.facets) if hull.contains(f.normal))
    return SubspaceCandidate(AFFINE, gens, hull)


def _lifted_span(track: SubspaceCandidate, n: int, j: int) -> AffineHull:
    hull = track.hull
    spanning = [hull.base] + [add(hull.base, d) for d in hull.directions]
    return linear_hull([psi_embed(n, j, x) for x in spanning], n + j)


def build_tower(
    p: Polytope,
    track: Union[SubspaceCandidate, Iterable[int]],
    depth: int,
    max_depth: Optional[int] = None,
    allow_noncentered: bool = False,
) -> LiftTower:
    if max_depth is None:
        max_depth = default_max_depth()
    if depth < 0 or depth > max_depth:
        raise DepthCapExceeded(f"tower depth {depth} outside [0, {max_depth}]")
    if not isinstance(track, SubspaceCandidate):
        track = track_candidate(p, track)
    if track.kind != AFFINE:
        raise GeometryError("towers follow affine subspaces of the polar vertices")
    n = p.dim
    base_normals = [p.facets[i].normal for i in track.generators]
    levels = [LiftLevel(0, p, tuple(track.generators), _lifted_span(track, n, 0))]
    current = p
    for j in range(1, depth + 1):
        current = lift_once(current, allow_noncentered)
        tracked = []
        for a in base_normals:
            k = current.facet_index(psi_embed(n, j, a))
            if k < 0:
                raise LiftError(f"level {j} has no facet with the embedded polar vertex of {a}")
            tracked.append(k)
        levels.append(LiftLevel(j, current, tuple(sorted(tracked)), _lifted_span(track, n, j)))
    return LiftTower(p, track, tuple(levels))


def star_pyramid_volume(tower: LiftTower, j: int) -> Fraction:
    """Volume of the star pyramid over the tracked boundary part at level ``j``.

    Facet cones have disjoint interiors, so the star pyramid's volume is the
    sum of the tracked facet cone volumes.
    """
    level = tower.levels[j]
    atoms = cone_volumes(level.polytope).atoms
    return sum((atoms[i][1] for i in level.tracked), Fraction(0))


def chain_bounds(tower: LiftTower) -> list:
    n = tower.base.dim
    k = tower.track.dim + 1
    vol = tower.base.volume
    out = []
    for level in tower.levels[1:]:
        j = level.j
        out.append(
            ChainBound(
                j,
                Fraction(k, n + j) * level.polytope.volume,
                Fraction(k * (n + j + 1), (n + j) * (n + 1)) * vol,
            )
        )
    return out


def linear_measure(tower: LiftTower, j: int) -> Fraction:
    """Cone volume of ``K^(j)`` on ``L^(j)``, the linear audit the proof applies at level j."""
    level = tower.levels[j]
    return check_subspace(level.polytope, LINEAR, level.subspace).lhs


def expected_lift_normals(p: Polytope) -> set:
    """Polar vertices the lift must have: ``phi_n(a_i)`` for each facet plus ``e_{n+1}``."""
    n = p.dim
    top = (Fraction(0),) * n + (Fraction(1),)
    return {phi_embed(n, f.normal) for f in p.facets} | {top}


def lift_checks(p: Polytope, lifted: Polytope) -> dict:
    """Exact checks of the lift identities for one level of a tower."""
    n = p.dim
    base_centered = not any(p.centroid)
    return {
        "volume_ratio": lifted.volume == Fraction(n + 2, n + 1) * p.volume,
        # only promised for centered bases
        "centered": (not base_centered) or not any(lifted.centroid),
        "facet_correspondence": {f.normal for f in lifted.facets} == expected_lift_normals(p),
    }
