"""Independent oracles for cross-checking the exact kernels.

The Monte Carlo estimators are statistical and return floats; they never
feed back into exact computations. The remaining oracles are exact but take
deliberately different routes from the code they check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Optional

import numpy as np

from .audit import AFFINE, LINEAR, concentration_bound
from .measure import ConeVolumeMeasure
from .polytope import Polytope

__all__ = [
    "OracleConfig",
    "bounding_box",
    "mc_volume",
    "mc_centroid",
    "cofactor_determinant",
    "permutation_determinant",
    "rank_by_minors",
    "brute_force_audit",
]

CHUNK = 65536


@dataclass(frozen=True)
class OracleConfig:
    sample_count: int
    seed: int = 0
    bounding_box: Optional[tuple] = None  # (lower corner, upper corner)

    def __post_init__(self):
        if self.sample_count < 1:
            raise ValueError("sample_count must be at least 1")


def bounding_box(p: Polytope) -> tuple:
    lo = tuple(min(v[k] for v in p.vertices) for k in range(p.dim))
    hi = tuple(max(v[k] for v in p.vertices) for k in range(p.dim))
    return lo, hi


def _samples(p: Polytope, cfg: OracleConfig):
    """Yield ``(points, inside_mask)`` chunk by chunk.

    Chunk ``c`` draws from Philox keyed by the seed and jumped ``c`` times, so
    the stream for a chunk does not depend on how many chunks precede it.
    """
    lo, hi = cfg.bounding_box or bounding_box(p)
    lo = np.array([float(x) for x in lo])
    hi = np.array([float(x) for x in hi])
    A = np.array([[float(x) for x in f.normal] for f in p.facets])
    base = np.random.Philox(key=cfg.seed)
    remaining, chunk = cfg.sample_count, 0
    while remaining > 0:
        size = min(CHUNK, remaining)
        rng = np.random.Generator(base.jumped(chunk))
        x = lo + (hi - lo) * rng.random((size, p.dim))
        inside = np.all(x @ A.T <= 1.0 + 1e-12, axis=1)
        yield x, inside
        remaining -= size
        chunk += 1


def _box_volume(p: Polytope, cfg: OracleConfig) -> float:
    lo, hi = cfg.bounding_box or bounding_box(p)
    return float(np.prod([float(b) - float(a) for a, b in zip(lo, hi)]))


def mc_volume(p: Polytope, cfg: OracleConfig) -> tuple:
    """Hit-or-miss volume estimate and its standard error."""
    hits = sum(int(inside.sum()) for _, inside in _samples(p, cfg))
    f = hits / cfg.sample_count
    box = _box_volume(p, cfg)
    return box * f, box * math.sqrt(f * (1 - f) / cfg.sample_count)


def mc_centroid(p: Polytope, cfg: OracleConfig) -> tuple:
    """Sample mean of the hits and the per-coordinate standard errors."""
    total = np.zeros(p.dim)
    sq = np.zeros(p.dim)
    hits = 0
    for x, inside in _samples(p, cfg):
        h = x[inside]
        total += h.sum(axis=0)
        sq += (h * h).sum(axis=0)
        hits += len(h)
    mean = total / hits
    var = sq / hits - mean * mean
    return mean, np.sqrt(np.maximum(var, 0.0) / hits)


def cofactor_determinant(m) -> Fraction:
    """Laplace expansion along the first row."""
    n = len(m)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(m[0][0])
    total = Fraction(0)
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        total += (-1) ** j * Fraction(m[0][j]) * cofactor_determinant(minor)
    return total


def permutation_determinant(m) -> Fraction:
    """Leibniz formula; only for tiny matrices."""
    n = len(m)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction((-1) ** inversions)
        for i in range(n):
            term *= m[i][perm[i]]
        total += term
    return total


def rank_by_minors(m) -> int:
    """Largest k with a nonzero k x k minor."""
    rows, cols = len(m), len(m[0]) if m else 0
    for k in range(min(rows, cols), 0, -1):
        for r in combinations(range(rows), k):
            for c in combinations(range(cols), k):
                if cofactor_determinant([[m[i][j] for j in c] for i in r]) != 0:
                    return k
    return 0


class _Span:
    """Integer row-echelon basis; membership by fraction-free elimination."""

    def __init__(self, n: int):
        self.n = n
        self.rows: list = []
        self.pivots: list = []

    def reduce(self, v) -> list:
        w = list(v)
        for row, c in zip(self.rows, self.pivots):
            if w[c]:
                f, r = w[c], row[c]
                w = [r * a - f * b for a, b in zip(w, row)]
                g = math.gcd(*w)
                if g > 1:
                    w = [a // g for a in w]
        return w

    def add(self, v) -> bool:
        w = self.reduce(v)
        nz = next((i for i, x in enumerate(w) if x), None)
        if nz is None:
            return False
        self.rows.append(w)
        self.pivots.append(nz)
        return True

    def __contains__(self, v) -> bool:
        return not any(self.reduce(v))

    @property
    def dim(self) -> int:
        return len(self.rows)


def _random_rational(rng: np.random.Generator) -> Fraction:
    return Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 4)))


def brute_force_audit(mu: ConeVolumeMeasure, kind: str, trials: int, seed: int = 0) -> Fraction:
    """Worst ``lhs / rhs`` over randomly sampled subspaces.

    Each trial picks a dimension, plants a random subset of atoms (possibly
    none) and completes the subspace with random rational directions. The
    right-hand side uses the sampled subspace's own dimension.
    """
    if kind not in (LINEAR, AFFINE):
        raise ValueError(f"unknown subspace kind {kind!r}")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = np.random.Generator(np.random.Philox(key=seed))
    n, m = mu.dim, len(mu.atoms)
    total = mu.total
    # scaling everything by one positive integer keeps all incidences; the
    # extra factor 6 absorbs the denominators of the random base points
    s = 6 * math.lcm(*(x.denominator for a in mu.points for x in a))
    pts = [[int(x * s) for x in a] for a in mu.points]
    worst = Fraction(0)
    for _ in range(trials):
        d = int(rng.integers(0 if kind == AFFINE else 1, n))
        max_planted = d + 1 if kind == AFFINE else d
        k = int(rng.integers(0, min(max_planted, m) + 1))
        planted = [pts[i] for i in rng.choice(m, size=k, replace=False)] if k else []
        span = _Span(n)
        if kind == AFFINE:
            if planted:
                base = planted[0]
            else:
                base = [int(_random_rational(rng) * s) for _ in range(n)]
            for q in planted[1:]:
                span.add([a - b for a, b in zip(q, base)])
        else:
            base = [0] * n
            for q in planted:
                span.add(q)
        while span.dim < d:
            span.add([int(_random_rational(rng) * 6) for _ in range(n)])
        lhs = Fraction(0)
        for a, (_, w) in zip(pts, mu.atoms):
            if [x - b for x, b in zip(a, base)] in span:
                lhs += w
        rhs = concentration_bound(kind, span.dim, n, total)
        worst = max(worst, lhs / rhs)
    return worst
