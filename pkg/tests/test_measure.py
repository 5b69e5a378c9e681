from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conevol.exact import affine_hull, dot, linear_hull, scale, sub, zero_vector
from conevol.measure import (
    DomainError,
    cone_volumes,
    measure_on_affine,
    support_value,
    translated_weight,
)
from conevol.polytope import convex_hull, hull_volume

from conftest import F


def facet_cone_by_hull(p, i):
    """Volume of conv(F_i ∪ {0}) from a fresh hull of those points."""
    pts = [p.vertices[k] for k in p.facets[i].incident] + [zero_vector(p.dim)]
    return hull_volume(pts)


def translate_oracle(p, omega, x):
    """Recompute the cone volumes of p - x and read them off on the same normals."""
    moved = convex_hull(sub(v, x) for v in p.vertices)
    mu = cone_volumes(moved)
    total = Fraction(0)
    for i in omega:
        a = p.facets[i].normal
        k = moved.facet_index(scale(1 / (1 - dot(a, x)), a))
        assert k >= 0
        total += mu.atoms[k][1]
    return total


def interior_point(p, rng):
    w = [Fraction(int(rng.integers(1, 10))) for _ in p.vertices]
    s = sum(w)
    return tuple(sum(wi * v[k] for wi, v in zip(w, p.vertices)) / s for k in range(p.dim))


class TestConeVolumes:
    def test_square(self, square):
        mu = cone_volumes(square)
        assert dict(mu.atoms) == {F(1, 0): 1, F(-1, 0): 1, F(0, 1): 1, F(0, -1): 1}
        assert mu.total == 4

    def test_centered_triangle(self, triangle):
        mu = cone_volumes(triangle)
        assert mu.total == Fraction(3, 2) == triangle.volume
        assert mu.weights == [Fraction(1, 2)] * 3

    def test_star_pyramid_consistency(self, small_corpus, cube3):
        for p in small_corpus + [cube3]:
            mu = cone_volumes(p)
            for i in range(len(p.facets)):
                assert mu.atoms[i][1] == facet_cone_by_hull(p, i) > 0

    def test_cone_decomposition_and_closure(self, small_corpus):
        for p in small_corpus:
            mu = cone_volumes(p)
            assert mu.total == p.volume
            assert mu.moment() == zero_vector(p.dim)

    def test_closure_without_centering(self):
        p = convex_hull([(3, 0), (0, 1), (-1, -1), (1, -2)])
        assert any(p.centroid)
        assert cone_volumes(p).moment() == F(0, 0)


class TestSupport:
    def test_square(self, square):
        assert support_value(square, F(1, 0)) == 1
        assert support_value(square, F(1, 1)) == 2

    def test_zero_vector(self, square):
        with pytest.raises(DomainError):
            support_value(square, F(0, 0))

    @given(st.fractions(min_value=Fraction(1, 10), max_value=10), st.tuples(st.integers(-5, 5), st.integers(-5, 5)))
    def test_homogeneity(self, lam, u):
        from conevol.generator import canonical

        if u == (0, 0):
            return
        p = canonical("centered_simplex_2")
        u = F(*u)
        assert support_value(p, scale(lam, u)) == lam * support_value(p, u)


class TestMeasureOnAffine:
    def test_square_point(self, square):
        assert measure_on_affine(cone_volumes(square), affine_hull([F(1, 0)])) == 1

    def test_triangle_point(self, triangle):
        mu = cone_volumes(triangle)
        assert measure_on_affine(mu, affine_hull([mu.points[0]])) == Fraction(1, 2) == mu.total / 3

    def test_empty(self, square):
        assert measure_on_affine(cone_volumes(square), affine_hull([F(5, 5)])) == 0

    def test_linear_axis(self, square):
        assert measure_on_affine(cone_volumes(square), linear_hull([F(1, 0)])) == 2


class TestTranslatedWeight:
    def test_origin(self, small_corpus):
        for p in small_corpus:
            mu = cone_volumes(p)
            omega = range(0, len(p.facets), 2)
            assert translated_weight(p, omega, zero_vector(p.dim)) == sum(mu.atoms[i][1] for i in omega)

    def test_square_shift(self, square):
        i = square.facet_index(F(1, 0))
        x = F(Fraction(1, 2), 0)
        assert translated_weight(square, [i], x) == Fraction(1, 2) == translate_oracle(square, [i], x)

    def test_against_recomputed_translate(self, small_corpus):
        rng = np.random.default_rng(3)
        for p in small_corpus:
            for _ in range(3):
                x = interior_point(p, rng)
                omega = [i for i in range(len(p.facets)) if rng.integers(0, 2)]
                assert translated_weight(p, omega, x) == translate_oracle(p, omega, x)

    @settings(max_examples=30)
    @given(st.integers(0, 10**6))
    def test_affine_in_x(self, seed):
        from conevol.generator import canonical

        p = canonical("square_pyramid_3")
        rng = np.random.default_rng(seed)
        x, y = interior_point(p, rng), interior_point(p, rng)
        omega = [0, 2, 3]
        mid = tuple((a + b) / 2 for a, b in zip(x, y))
        assert 2 * translated_weight(p, omega, mid) == translated_weight(p, omega, x) + translated_weight(p, omega, y)

    def test_outside_point(self, square):
        with pytest.raises(DomainError):
            translated_weight(square, [0], F(2, 0))
