"""Full-dimensional polytopes containing the origin in their interior.

A :class:`Polytope` keeps both descriptions at once: the irredundant vertex
list and, for every facet, the vector ``a`` with ``<a, x> <= 1`` on the
polytope (so the facet normals are exactly the vertices of the polar body)
together with the indices of the vertices lying on that facet.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .exact import (
    GeometryError,
    Vector,
    add,
    affine_hull,
    determinant,
    dot,
    rank_and_solve,
    scale,
    sub,
    vector,
    zero_vector,
)

__all__ = [
    "DegenerateError",
    "NormalizationError",
    "Facet",
    "Polytope",
    "convex_hull",
    "volume",
    "centroid",
    "center",
    "polar",
    "is_pyramid",
    "simplex_volume",
    "hull_volume",
]


class DegenerateError(GeometryError):
    """The points do not span a full-dimensional body."""


class NormalizationError(GeometryError):
    """The origin is not an interior point, so ``<a, x> <= 1`` is impossible."""


@dataclass(frozen=True, order=True)
class Facet:
    normal: Vector  # the polar vertex a_i
    incident: tuple  # sorted vertex indices with <a_i, v> == 1


@dataclass(frozen=True)
class Polytope:
    dim: int
    vertices: tuple
    facets: tuple

    def facet_index(self, normal: Vector) -> int:
        """Index of the facet whose polar vertex equals ``normal``, or -1."""
        return self._normal_lookup.get(tuple(normal), -1)

    @cached_property
    def _normal_lookup(self) -> dict:
        return {f.normal: i for i, f in enumerate(self.facets)}

    @cached_property
    def _face_cache(self) -> dict:
        return {}

    def contains(self, x: Vector) -> bool:
        return all(dot(f.normal, x) <= 1 for f in self.facets)

    def contains_interior(self, x: Vector) -> bool:
        return all(dot(f.normal, x) < 1 for f in self.facets)

    def face_dim(self, face: Iterable[int]) -> int:
        pts = [self.vertices[i] for i in face]
        return affine_hull(pts).dim if pts else -1

    def triangulate_face(self, face: frozenset, d: int) -> list:
        """Pulling triangulation of a ``d``-dimensional face.

        Fans from the lowest-index vertex of the face over the triangulations
        of those of its ``(d-1)``-faces that miss that vertex. Each simplex is
        a tuple of ``d+1`` vertex indices.
        """
        key = face
        cache = self._face_cache
        if key in cache:
            return cache[key]
        if d == 0:
            (v,) = tuple(face)
            result = [(v,)]
        else:
            apex = min(face)
            subfaces = []
            seen = set()
            for f in self.facets:
                g = face.intersection(f.incident)
                if apex in g or len(g) < d or g in seen:
                    continue
                seen.add(g)
                if self.face_dim(g) == d - 1:
                    subfaces.append(g)
            result = []
            for g in sorted(subfaces, key=sorted):
                for simplex in self.triangulate_face(g, d - 1):
                    result.append((apex,) + simplex)
        cache[key] = result
        return result

    @cached_property
    def triangulation(self) -> list:
        return self.triangulate_face(frozenset(range(len(self.vertices))), self.dim)

    @cached_property
    def volume(self) -> Fraction:
        return sum(
            (simplex_volume([self.vertices[i] for i in s]) for s in self.triangulation),
            Fraction(0),
        )

    @cached_property
    def centroid(self) -> Vector:
        acc = zero_vector(self.dim)
        for s in self.triangulation:
            pts = [self.vertices[i] for i in s]
            w = simplex_volume(pts)
            for p in pts:
                acc = add(acc, scale(w, p))
        return scale(1 / (self.volume * (self.dim + 1)), acc)


def simplex_volume(points: Sequence[Vector]) -> Fraction:
    """Volume of the simplex spanned by ``n+1`` points in R^n."""
    n = len(points) - 1
    v0 = points[0]
    det = determinant([sub(p, v0) for p in points[1:]])
    return abs(det) / math.factorial(n)


def _solve_integer(rows: list, n: int):
    """Fraction-free Gauss-Jordan solve of ``rows @ x = d * 1``.

    Returns ``(d, x)`` with integer ``x`` and ``d = det(rows) > 0``, or None
    when the rows are linearly dependent.
    """
    m = [list(r) + [1] for r in rows]
    prev = 1
    for k in range(n):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    break
            else:
                return None
        mk = m[k]
        pivot = mk[k]
        for i in range(n):
            if i == k:
                continue
            mi = m[i]
            f = mi[k]
            for j in range(k + 1, n + 1):
                mi[j] = (pivot * mi[j] - f * mk[j]) // prev
            mi[k] = 0
        prev = pivot
    d = prev
    x = [m[i][n] for i in range(n)]
    if d < 0:
        d, x = -d, [-v for v in x]
    return d, x


def _enumerate_facets(points: list, n: int) -> list:
    """Brute-force facets of ``conv(points)``, assuming 0 is interior.

    Every n-subset spanning a hyperplane ``<c, x> = 1`` that bounds all
    points contributes a facet; coplanar subsets collapse onto one entry.
    The arithmetic runs on integers after clearing denominators.
    """
    scale_by = math.lcm(*(x.denominator for p in points for x in p))
    ipts = [[int(x * scale_by) for x in p] for p in points]
    found: dict = {}
    incidences: list = []
    for subset in combinations(range(len(ipts)), n):
        s = set(subset)
        if any(s <= inc for inc in incidences):
            continue
        sol = _solve_integer([ipts[i] for i in subset], n)
        if sol is None:
            continue
        d, x = sol
        inc = set()
        for k, p in enumerate(ipts):
            v = sum(a * b for a, b in zip(x, p))
            if v > d:
                break
            if v == d:
                inc.add(k)
        else:
            c = tuple(Fraction(scale_by * a, d) for a in x)
            if c not in found:
                found[c] = inc
                incidences.append(inc)
    return list(found.items())


def convex_hull(points: Iterable) -> Polytope:
    """Exact convex hull of a point cloud whose hull has 0 in its interior."""
    pts = []
    seen = set()
    for p in points:
        v = vector(p)
        if v not in seen:
            seen.add(v)
            pts.append(v)
    if not pts:
        raise DegenerateError("no points")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise DegenerateError("points of different dimensions")
    if affine_hull(pts).dim < n:
        raise DegenerateError(f"points span a lower-dimensional set in R^{n}")

    # enumerate around the barycenter, which is interior for a full-dim cloud
    q = scale(Fraction(1, len(pts)), _sum(pts, n))
    shifted = [sub(p, q) for p in pts]
    raw = _enumerate_facets(shifted, n)

    facets = []
    for c, inc in raw:
        rhs = 1 + dot(c, q)
        if rhs <= 0:
            raise NormalizationError(
                "the origin is not an interior point of the hull; translate the points first"
            )
        facets.append((scale(1 / rhs, c), inc))

    vertex_ids = [
        k
        for k in range(len(pts))
        if rank_and_solve([a for a, inc in facets if k in inc])[0] == n
    ]
    order = sorted(vertex_ids, key=lambda k: pts[k])
    new_index = {k: i for i, k in enumerate(order)}
    vertices = tuple(pts[k] for k in order)
    facet_objs = sorted(
        Facet(a, tuple(sorted(new_index[k] for k in inc if k in new_index)))
        for a, inc in facets
    )
    return Polytope(n, vertices, tuple(facet_objs))


def _sum(vectors, n):
    acc = zero_vector(n)
    for v in vectors:
        acc = add(acc, v)
    return acc


def hull_volume(points: Iterable) -> Fraction:
    """Volume of the hull of any full-dimensional point cloud."""
    pts = [vector(p) for p in points]
    n = len(pts[0])
    q = scale(Fraction(1, len(pts)), _sum(pts, n))
    return convex_hull([sub(p, q) for p in pts]).volume


def volume(p: Polytope) -> Fraction:
    return p.volume


def centroid(p: Polytope) -> Vector:
    return p.centroid


def center(p: Polytope) -> Polytope:
    """Translate ``p`` so that its centroid sits at the origin."""
    c = p.centroid
    if not any(c):
        return p
    return convex_hull(sub(v, c) for v in p.vertices)


def polar(p: Polytope) -> Polytope:
    return convex_hull(f.normal for f in p.facets)


def is_pyramid(p: Polytope) -> list:
    """All ``(apex, base_facet)`` pairs such that every other facet contains the apex."""
    pairs = []
    for v in range(len(p.vertices)):
        missing = [i for i, f in enumerate(p.facets) if v not in f.incident]
        if len(missing) == 1:
            pairs.append((v, missing[0]))
    return pairs
