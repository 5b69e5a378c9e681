from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conevol.exact import (
    DimensionMismatch,
    EmptyInput,
    affine_hull,
    determinant,
    format_rational,
    linear_hull,
    nullspace,
    parse_rational,
    rank_and_solve,
    unit_vector,
)
from conevol.oracle import cofactor_determinant, permutation_determinant, rank_by_minors

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=20)
small_ints = st.integers(min_value=-5, max_value=5)


def matrices(n, elements=small_ints):
    return st.lists(st.lists(elements, min_size=n, max_size=n), min_size=n, max_size=n)


class TestScalars:
    @given(fractions, fractions, fractions)
    def test_field_axioms(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a + b - b == a
        if b != 0:
            assert a * b / b == a
        if a != 0:
            assert a * (1 / a) == 1

    @given(fractions)
    def test_literal_round_trip(self, x):
        assert parse_rational(format_rational(x)) == x
        assert x.denominator > 0

    @pytest.mark.parametrize("text, value", [("-3/4", Fraction(-3, 4)), ("2", Fraction(2)), ("6/8", Fraction(3, 4)), (7, Fraction(7))])
    def test_parse(self, text, value):
        assert parse_rational(text) == value

    def test_format_omits_unit_denominator(self):
        assert format_rational(Fraction(4, 2)) == "2"
        assert format_rational(Fraction(-3, 4)) == "-3/4"

    @pytest.mark.parametrize("bad", [0.5, "0.5", "1/2/3", "abc", True, None])
    def test_parse_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_rational(bad)


class TestDeterminant:
    def test_identity(self):
        assert determinant([unit_vector(3, i) for i in range(3)]) == 1

    def test_row_swap(self):
        assert determinant([[0, 1], [1, 0]]) == -1

    def test_non_square(self):
        with pytest.raises(DimensionMismatch):
            determinant([[1, 2, 3], [4, 5, 6]])

    @given(matrices(3))
    def test_matches_cofactor_expansion(self, m):
        assert determinant(m) == cofactor_determinant(m)

    @settings(max_examples=30)
    @given(matrices(4, fractions))
    def test_matches_leibniz(self, m):
        assert determinant(m) == permutation_determinant(m)

    @given(matrices(3), st.integers(0, 2), st.integers(0, 2))
    def test_repeated_row_vanishes(self, m, i, j):
        if i != j:
            m[j] = list(m[i])
            assert determinant(m) == 0


class TestRankAndSolve:
    def test_identity(self):
        eye = [unit_vector(3, i) for i in range(3)]
        rank, x = rank_and_solve(eye, unit_vector(3, 0))
        assert rank == 3 and x == unit_vector(3, 0)

    def test_zero(self):
        assert rank_and_solve([[0, 0], [0, 0]])[0] == 0

    def test_inconsistent(self):
        rank, x = rank_and_solve([[1, 1], [1, 1]], (1, 2))
        assert rank == 1 and x is None

    @given(matrices(3), st.integers(0, 2), st.integers(0, 2))
    def test_equal_rows_against_minor_oracle(self, m, i, j):
        if i != j:
            m[j] = list(m[i])
        rank, _ = rank_and_solve(m)
        assert rank == rank_by_minors(m)
        if i != j:
            assert rank <= 2

    @given(st.lists(st.lists(small_ints, min_size=4, max_size=4), min_size=2, max_size=4), st.lists(small_ints, min_size=4, max_size=4))
    def test_solution_satisfies_system(self, m, x0):
        rhs = tuple(sum(a * b for a, b in zip(row, x0)) for row in m)
        _, x = rank_and_solve(m, rhs)
        assert x is not None
        assert all(sum(a * b for a, b in zip(row, x)) == r for row, r in zip(m, rhs))

    @given(st.lists(st.lists(small_ints, min_size=4, max_size=4), min_size=1, max_size=3))
    def test_nullspace(self, m):
        basis = nullspace(m)
        assert len(basis) == 4 - rank_by_minors(m)
        for v in basis:
            assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)


class TestAffineHull:
    def test_single_point(self):
        assert affine_hull([unit_vector(2, 0)]).dim == 0

    def test_line(self):
        h = affine_hull([unit_vector(2, 0), unit_vector(2, 1)])
        assert h.dim == 1
        for p in [(1, 0), (0, 1), (Fraction(1, 2), Fraction(1, 2)), (3, -2)]:
            assert h.contains(tuple(Fraction(x) for x in p))
        assert not h.contains((Fraction(0), Fraction(0)))

    def test_plane_in_r3(self):
        third = Fraction(1, 3)
        pts = [unit_vector(3, i) for i in range(3)] + [(third, third, third)]
        h = affine_hull(pts)
        diffs = [[a - b for a, b in zip(p, pts[0])] for p in pts[1:]]
        assert h.dim == rank_by_minors(diffs) == 2

    def test_empty(self):
        with pytest.raises(EmptyInput):
            affine_hull([])

    @given(st.lists(st.lists(small_ints, min_size=3, max_size=3), min_size=1, max_size=5))
    def test_dim_and_membership(self, pts):
        pts = [tuple(Fraction(x) for x in p) for p in pts]
        h = affine_hull(pts)
        assert h.dim <= len(pts) - 1
        diffs = [[a - b for a, b in zip(p, pts[0])] for p in pts[1:]]
        assert h.dim == (rank_by_minors(diffs) if diffs else 0)
        assert all(h.contains(p) for p in pts)
        assert rank_by_minors(list(h.directions) or [[0, 0, 0]]) == h.dim

    def test_linear_hull_contains_origin(self):
        h = linear_hull([(Fraction(1), Fraction(1))])
        assert h.through_origin and h.dim == 1
