"""Reproducible random polytopes and a small catalogue of named bodies."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from .exact import GeometryError, add, scale, sub, unit_vector, zero_vector
from .polytope import Polytope, center, convex_hull

__all__ = ["GenSpec", "GenerationError", "generate", "canonical", "CANONICAL_NAMES", "corpus_specs"]

CANONICAL_NAMES = (
    "cube_<n>",
    "crosspolytope_<n>",
    "centered_simplex_<n>",
    "square_pyramid_3",
    "noncentered_triangle",
)


class GenerationError(GeometryError):
    pass


@dataclass(frozen=True)
class GenSpec:
    dim: int
    vertex_count: int
    coordinate_range: int = 5
    seed: int = 0
    symmetrize: bool = False
    center: bool = True
    denominator: int = 1

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        if self.vertex_count < self.dim + 1:
            raise ValueError(f"need at least {self.dim + 1} points in R^{self.dim}")
        if self.coordinate_range < 1 or self.denominator < 1:
            raise ValueError("coordinate range and denominator must be positive")


def _rng(seed: int) -> np.random.Generator:
    # Philox is counter-based: the stream is a fixed function of (key, counter)
    return np.random.Generator(np.random.Philox(key=seed))


def generate(spec: GenSpec, max_attempts: int = 100) -> Polytope:
    """Hull of integer points drawn uniformly from ``[-R, R]^n`` (scaled by 1/denominator).

    Degenerate draws, and draws whose hull misses the origin when no
    centering is requested, are redrawn from the same stream.
    """
    rng = _rng(spec.seed)
    R, n = spec.coordinate_range, spec.dim
    for _ in range(max_attempts):
        raw = rng.integers(-R, R + 1, size=(spec.vertex_count, n))
        pts = [tuple(Fraction(int(x), spec.denominator) for x in row) for row in raw]
        if spec.symmetrize:
            pts += [tuple(-x for x in p) for p in pts]
        try:
            if spec.center:
                q = scale(Fraction(1, len(pts)), _sum(pts, n))
                return center(convex_hull(sub(p, q) for p in pts))
            return convex_hull(pts)
        except GeometryError:
            continue
    raise GenerationError(f"no full-dimensional sample after {max_attempts} attempts for {spec}")


def _sum(vectors, n):
    acc = zero_vector(n)
    for v in vectors:
        acc = add(acc, v)
    return acc


_NAME_RE = re.compile(r"^(cube|crosspolytope|centered_simplex)_(\d+)$")


def canonical(name: str) -> Polytope:
    if name == "square_pyramid_3":
        # conv{(±1,±1,0), (0,0,1)} moved down by its centroid height 1/4
        h = Fraction(1, 4)
        pts = [(Fraction(x), Fraction(y), -h) for x, y in product((-1, 1), repeat=2)]
        return convex_hull(pts + [(Fraction(0), Fraction(0), 1 - h)])
    if name == "noncentered_triangle":
        return convex_hull([(1, 0), (0, 1), ("-1/2", "-1/2")])
    match = _NAME_RE.match(name)
    if not match:
        raise KeyError(f"unknown canonical polytope {name!r}; known: {', '.join(CANONICAL_NAMES)}")
    family, n = match.group(1), int(match.group(2))
    if n < 1:
        raise KeyError(f"dimension must be positive in {name!r}")
    if family == "cube":
        return convex_hull(product((-1, 1), repeat=n))
    if family == "crosspolytope":
        units = [unit_vector(n, i) for i in range(n)]
        return convex_hull(units + [scale(-1, e) for e in units])
    units = [unit_vector(n, i) for i in range(n)]
    return convex_hull(units + [(Fraction(-1),) * n])


def corpus_specs(count: int, seed: int = 0) -> list:
    """A reproducible mix of generation specs in dimensions 2, 3 and 4.

    Vertex counts stay at or below 12, and at or below 8 in dimension 4, so
    no body has more than 20 facets.
    """
    rng = _rng(seed)
    specs = []
    for k in range(count):
        n = (2, 3, 4)[k % 3]
        hi = 8 if n == 4 else 12
        m = int(rng.integers(n + 1, hi + 1))
        symmetrize = n < 4 and m <= 6 and bool(rng.integers(0, 4) == 0)
        specs.append(
            GenSpec(n, m, coordinate_range=int(rng.integers(2, 7)), seed=int(rng.integers(0, 2**32)),
                    symmetrize=symmetrize)
        )
    return specs
