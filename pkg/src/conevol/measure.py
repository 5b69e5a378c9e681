"""Cone volume measures of polytopes.

For a polytope ``P = {x : <a_i, x> <= 1}`` the cone volume measure is atomic:
the atom at direction ``a_i / |a_i|`` carries the volume of the cone
``conv(F_i ∪ {0})``. Atoms are keyed by the polar vertex ``a_i`` itself so
that no square roots ever appear.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .exact import AffineHull, GeometryError, Vector, dot, zero_vector
from .polytope import Polytope, simplex_volume

__all__ = [
    "DomainError",
    "ConeVolumeMeasure",
    "cone_volumes",
    "facet_cone_volume",
    "support_value",
    "measure_on_affine",
    "translated_weight",
]


class DomainError(GeometryError):
    pass


@dataclass(frozen=True)
class ConeVolumeMeasure:
    atoms: tuple  # ((a_i, w_i), ...) in facet order
    dim: int

    @property
    def total(self) -> Fraction:
        return sum((w for _, w in self.atoms), Fraction(0))

    @property
    def points(self) -> list:
        return [a for a, _ in self.atoms]

    @property
    def weights(self) -> list:
        return [w for _, w in self.atoms]

    def moment(self) -> Vector:
        """``sum_i w_i a_i``; vanishes for every polytope with 0 interior."""
        acc = list(zero_vector(self.dim))
        for a, w in self.atoms:
            for k in range(self.dim):
                acc[k] += w * a[k]
        return tuple(acc)


def facet_cone_volume(p: Polytope, i: int) -> Fraction:
    """Volume of ``conv(F_i ∪ {0})`` from a triangulation of the facet."""
    origin = zero_vector(p.dim)
    facet = p.facets[i]
    simplices = p.triangulate_face(frozenset(facet.incident), p.dim - 1)
    return sum(
        (simplex_volume([origin] + [p.vertices[k] for k in s]) for s in simplices),
        Fraction(0),
    )


@lru_cache(maxsize=512)
def cone_volumes(p: Polytope) -> ConeVolumeMeasure:
    return ConeVolumeMeasure(
        tuple((f.normal, facet_cone_volume(p, i)) for i, f in enumerate(p.facets)),
        p.dim,
    )


def support_value(p: Polytope, u: Vector) -> Fraction:
    if not any(u):
        raise DomainError("support function evaluated at the zero vector")
    return max(dot(u, v) for v in p.vertices)


def measure_on_affine(mu: ConeVolumeMeasure, hull: AffineHull) -> Fraction:
    """Total weight of the atoms whose polar vertex lies in ``hull``."""
    return sum((w for a, w in mu.atoms if hull.contains(a)), Fraction(0))


def translated_weight(p: Polytope, omega: Iterable[int], x: Vector) -> Fraction:
    """Cone volume of the translate ``p - x`` on the normals indexed by ``omega``.

    Affine in ``x``: equals ``sum_{i in omega} w_i (1 - <x, a_i>)``.
    """
    if not p.contains(x):
        raise DomainError("translation point lies outside the polytope")
    mu = cone_volumes(p)
    total = Fraction(0)
    for i in set(omega):
        a, w = mu.atoms[i]
        total += w * (1 - dot(x, a))
    return total
