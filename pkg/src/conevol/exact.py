"""Exact rational scalars and the small dense linear algebra used everywhere else.

Scalars are :class:`fractions.Fraction` (always stored in lowest terms with a
positive denominator). Vectors are tuples of fractions, matrices are sequences
of such tuples. Nothing in here touches floating point.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence

Vector = tuple  # tuple[Fraction, ...]
Matrix = Sequence[Vector]

__all__ = [
    "Fraction",
    "GeometryError",
    "DimensionMismatch",
    "EmptyInput",
    "AffineHull",
    "parse_rational",
    "format_rational",
    "vector",
    "dot",
    "add",
    "sub",
    "scale",
    "zero_vector",
    "unit_vector",
    "determinant",
    "rank_and_solve",
    "nullspace",
    "affine_hull",
    "linear_hull",
]


class GeometryError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(GeometryError):
    pass


class EmptyInput(GeometryError):
    pass


_RATIONAL_RE = re.compile(r"^\s*[+-]?\d+(\s*/\s*[+-]?\d+)?\s*$")


def parse_rational(value) -> Fraction:
    """Read a rational literal such as ``"-3/4"`` or ``"2"`` (JSON ints allowed).

    Floats and decimal strings are refused: they would silently smuggle a
    binary rounding error into exact computations.
    """
    if isinstance(value, bool):
        raise ValueError(f"not a rational literal: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str) and _RATIONAL_RE.match(value):
        frac = Fraction(value.replace(" ", ""))
        return frac
    raise ValueError(f"not a rational literal: {value!r}")


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


def vector(values: Iterable) -> Vector:
    return tuple(parse_rational(v) if not isinstance(v, Fraction) else v for v in values)


def dot(x: Vector, y: Vector) -> Fraction:
    if len(x) != len(y):
        raise DimensionMismatch(f"dot of vectors with dims {len(x)} and {len(y)}")
    return sum((a * b for a, b in zip(x, y)), Fraction(0))


def add(x: Vector, y: Vector) -> Vector:
    return tuple(a + b for a, b in zip(x, y))


def sub(x: Vector, y: Vector) -> Vector:
    return tuple(a - b for a, b in zip(x, y))


def scale(c, x: Vector) -> Vector:
    return tuple(c * a for a in x)


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(Fraction(1 if k == i else 0) for k in range(n))


def _size(x: Fraction) -> int:
    return x.numerator.bit_length() + x.denominator.bit_length()


def _pick_pivot(rows: list[list[Fraction]], col: int, start: int) -> Optional[int]:
    best = None
    for r in range(start, len(rows)):
        v = rows[r][col]
        if v != 0 and (best is None or _size(v) < _size(rows[best][col])):
            best = r
    return best


def determinant(m: Matrix) -> Fraction:
    """Exact determinant by Gaussian elimination.

    Pivots are chosen as the nonzero entry of smallest bit size in the
    column, which keeps intermediate fractions small and makes the result
    independent of input row order up to sign.
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise DimensionMismatch("determinant of a non-square matrix")
    rows = [[Fraction(v) for v in row] for row in m]
    det = Fraction(1)
    for col in range(n):
        piv = _pick_pivot(rows, col, col)
        if piv is None:
            return Fraction(0)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        p = rows[col][col]
        det *= p
        for r in range(col + 1, n):
            f = rows[r][col]
            if f:
                f /= p
                row_r, row_c = rows[r], rows[col]
                for k in range(col + 1, n):
                    row_r[k] -= f * row_c[k]
    return det


def _rref(rows: list[list[Fraction]], ncols: int) -> list[int]:
    """Reduce ``rows`` in place to reduced row echelon form over the first
    ``ncols`` columns; return the pivot columns."""
    pivots = []
    r = 0
    for col in range(ncols):
        if r == len(rows):
            break
        piv = _pick_pivot(rows, col, r)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        rows[r] = [v / p for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    return pivots


def rank_and_solve(m: Matrix, rhs: Optional[Vector] = None) -> tuple[int, Optional[Vector]]:
    """Return ``(rank, solution)`` of ``m @ x = rhs``.

    ``solution`` is None when no right-hand side was given or the system is
    inconsistent. Free variables are set to zero.
    """
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    if any(len(row) != ncols for row in m):
        raise DimensionMismatch("ragged matrix")
    if rhs is not None and len(rhs) != nrows:
        raise DimensionMismatch(f"rhs has length {len(rhs)}, matrix has {nrows} rows")
    if rhs is None:
        rows = [[Fraction(v) for v in row] for row in m]
    else:
        rows = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(m, rhs)]
    pivots = _rref(rows, ncols)
    rank = len(pivots)
    if rhs is None:
        return rank, None
    if any(rows[i][ncols] != 0 for i in range(rank, nrows)):
        return rank, None
    x = [Fraction(0)] * ncols
    for i, col in enumerate(pivots):
        x[col] = rows[i][ncols]
    return rank, tuple(x)


def nullspace(m: Matrix, ncols: Optional[int] = None) -> list[Vector]:
    """Basis of ``{x : m @ x = 0}``; ``ncols`` is needed when ``m`` has no rows."""
    if ncols is None:
        ncols = len(m[0])
    rows = [[Fraction(v) for v in row] for row in m]
    pivots = _rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for i, col in enumerate(pivots):
            x[col] = -rows[i][f]
        basis.append(tuple(x))
    return basis


@dataclass(frozen=True)
class AffineHull:
    """An affine subspace ``base + span(directions)`` with independent directions."""

    base: Vector
    directions: tuple

    @property
    def dim(self) -> int:
        return len(self.directions)

    @property
    def ambient_dim(self) -> int:
        return len(self.base)

    @cached_property
    def equations(self) -> list[Vector]:
        # normals c with <c, x - base> = 0 exactly on the subspace
        return nullspace(list(self.directions), self.ambient_dim)

    @cached_property
    def offsets(self) -> list[Fraction]:
        return [dot(c, self.base) for c in self.equations]

    def contains(self, point: Vector) -> bool:
        if len(point) != self.ambient_dim:
            raise DimensionMismatch("point and subspace live in different dimensions")
        return all(dot(c, point) == b for c, b in zip(self.equations, self.offsets))

    @property
    def through_origin(self) -> bool:
        return self.contains(zero_vector(self.ambient_dim))


def _independent_subset(vectors: Sequence[Vector], n: int) -> list[Vector]:
    """Greedy maximal linearly independent subset, kept in input order."""
    basis: list[Vector] = []
    echelon: list[list[Fraction]] = []
    pivcols: list[int] = []
    for v in vectors:
        w = [Fraction(x) for x in v]
        for row, c in zip(echelon, pivcols):
            if w[c]:
                f = w[c] / row[c]
                w = [a - f * b for a, b in zip(w, row)]
        nz = next((i for i, x in enumerate(w) if x), None)
        if nz is None:
            continue
        echelon.append(w)
        pivcols.append(nz)
        basis.append(tuple(v))
        if len(basis) == n:
            break
    return basis


def affine_hull(points: Sequence[Vector]) -> AffineHull:
    if not points:
        raise EmptyInput("affine hull of no points")
    n = len(points[0])
    if any(len(p) != n for p in points):
        raise DimensionMismatch("points of different dimensions")
    base = tuple(Fraction(x) for x in points[0])
    diffs = [sub(p, base) for p in points[1:]]
    return AffineHull(base, tuple(_independent_subset(diffs, n)))


def linear_hull(points: Sequence[Vector], n: Optional[int] = None) -> AffineHull:
    if n is None:
        if not points:
            raise EmptyInput("linear hull of no points needs an ambient dimension")
        n = len(points[0])
    return AffineHull(zero_vector(n), tuple(_independent_subset(points, n)))
