import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcontact import (QuadricClass, RigidMotion, UnsupportedClassError, classify, eigenvalues_sym3,
                      evaluate, invariant_set, quadric_from_coefficients, reduced_form, sphere,
                      transform)
from qcontact.generators import TABLE_CLASSES, random_params, standard_quadric
from qcontact.invariants import eigh_sym3, orientation

C = QuadricClass
seeds = st.integers(0, 2 ** 32 - 1)

BEE = quadric_from_coefficients(1, 1, 3, 0, 0, 0, -3, -3, -16.5, 108.65)
PLANE_PAIR = quadric_from_coefficients(1, 0, 0, 0, 0, 0, 0, 0, 0, -4)
HYPERBOLOID = quadric_from_coefficients(1, 1, -0.25, 0, 0, 0, 0, 0, 0.75, -3.25)
PARABOLOID = quadric_from_coefficients(1, 1, 0, 0, 0, 0, 0, 0, 4, 0)


def det_shift(A, mu):
    return np.linalg.det(np.asarray(A) - mu * np.eye(3))


def random_sym(rng, scale=1.0):
    m = rng.normal(size=(3, 3)) * scale
    return (m + m.T) / 2


class TestEigenvalues:
    def test_diagonal(self):
        assert eigenvalues_sym3(np.diag([2.0, 2.0, 3.0])) == (3.0, 2.0, 2.0)

    def test_hyperboloid_block(self):
        assert eigenvalues_sym3(np.diag([1.0, 1.0, -0.25])) == (1.0, 1.0, -0.25)

    def test_clustered_spectrum(self):
        r = RigidMotion.random(np.random.default_rng(3)).rotation
        A = r @ np.diag([1.0, 1.0 + 1e-12, -2.0]) @ r.T
        np.testing.assert_allclose(eigenvalues_sym3(A), (1.0 + 1e-12, 1.0, -2.0), atol=1e-14)

    @given(seeds, st.floats(1e-3, 1e3))
    def test_recomposes_and_is_descending(self, seed, scale):
        A = random_sym(np.random.default_rng(seed), scale)
        w, v = eigh_sym3(A)
        assert list(w) == sorted(w, reverse=True)
        np.testing.assert_allclose(v @ np.diag(w) @ v.T, A, atol=1e-9 * scale)
        np.testing.assert_allclose(v.T @ v, np.eye(3), atol=1e-12)

    @given(seeds)
    def test_characteristic_residual(self, seed):
        A = random_sym(np.random.default_rng(seed))
        s = np.abs(A).max()
        for mu in eigenvalues_sym3(A):
            assert abs(det_shift(A, mu)) <= 1e-8 * s ** 3

    @given(seeds)
    def test_matches_library_solver(self, seed):
        A = random_sym(np.random.default_rng(seed))
        np.testing.assert_allclose(eigenvalues_sym3(A), np.linalg.eigvalsh(A)[::-1], atol=1e-12)


class TestInvariantSet:
    def test_unit_sphere(self):
        inv = invariant_set(sphere((0, 0, 0), 1))
        assert inv.detQ == pytest.approx(-1)
        assert inv.mu == pytest.approx((1, 1, 1))
        assert (inv.J, inv.K, inv.Jp) == pytest.approx((3, -3, -3))
        assert inv.trQ00 == pytest.approx(3) and inv.detQ00 == pytest.approx(1)

    def test_bee(self):
        assert invariant_set(BEE).detQ == pytest.approx(-0.3)

    def test_plane_pair(self):
        inv = invariant_set(PLANE_PAIR)
        assert inv.mu == pytest.approx((1, 0, 0))
        assert inv.Jp == pytest.approx(-4)
        assert inv.detQ == 0

    def test_fields_match_matrix_minors(self):
        q = quadric_from_coefficients(2, 3, 5, 0.5, -1, 0.25, 1, -2, 0.5, -3)
        m, a = q.matrix, q.A
        inv = invariant_set(q)
        J = sum(np.linalg.det(a[np.ix_(k, k)]) for k in ([0, 1], [0, 2], [1, 2]))
        K = sum(np.linalg.det(m[np.ix_(k, k)]) for k in ([0, 1, 3], [0, 2, 3], [1, 2, 3]))
        Jp = sum(np.linalg.det(m[np.ix_(k, k)]) for k in ([0, 3], [1, 3], [2, 3]))
        assert inv.detQ == pytest.approx(np.linalg.det(m))
        assert inv.detQ00 == pytest.approx(np.linalg.det(a))
        assert inv.trQ00 == pytest.approx(np.trace(a))
        assert (inv.J, inv.K, inv.Jp) == pytest.approx((J, K, Jp))

    @given(seeds)
    def test_rigid_invariance(self, seed):
        rng = np.random.default_rng(seed)
        q = quadric_from_coefficients(*rng.normal(size=10))
        moved = transform(q, RigidMotion.random(rng, 2.0))
        a, b = invariant_set(q), invariant_set(moved)
        s = np.linalg.norm(q.matrix)
        for name, deg in (("detQ", 4), ("trQ00", 1), ("detQ00", 3), ("J", 2)):
            assert abs(getattr(a, name) - getattr(b, name)) <= 1e-8 * s ** deg
        assert np.abs(np.subtract(a.mu, b.mu)).max() <= 1e-8 * s


class TestClassify:
    @pytest.mark.parametrize("q, cls", [
        (PARABOLOID, C.ELLIPTIC_PARABOLOID),
        (HYPERBOLOID, C.HYPERBOLOID_ONE_SHEET),
        (PLANE_PAIR, C.PARALLEL_PLANES),
        (BEE, C.ELLIPSOID),
        (quadric_from_coefficients(1, 1, -1, 0, 0, 0, 0, 0, 0, 0), C.CONE),
        (quadric_from_coefficients(1, -1, 0, 0, 0, 0, 0, 0, 0, 0), C.INTERSECTING_PLANES),
        (quadric_from_coefficients(0, 0, 0, 0, 0, 0, 0, 0, 0.5, -1), C.SINGLE_PLANE),
        (quadric_from_coefficients(1, 1, 1, 0, 0, 0, 0, 0, 0, 1), C.OTHER),
        (quadric_from_coefficients(1, 1, 1, 0, 0, 0, 0, 0, 0, 0), C.OTHER),
    ])
    def test_examples(self, q, cls):
        assert classify(q) is cls

    @pytest.mark.parametrize("cls", TABLE_CLASSES)
    def test_standard_forms(self, cls):
        assert classify(standard_quadric(cls, 2.0, 1.5, 1.2)) is cls

    @given(seeds, st.sampled_from(TABLE_CLASSES))
    def test_invariant_under_motion(self, seed, cls):
        rng = np.random.default_rng(seed)
        q = standard_quadric(cls, **random_params(cls, rng))
        assert classify(transform(q, RigidMotion.random(rng, 5.0))) is cls

    @given(seeds, st.sampled_from(TABLE_CLASSES), st.floats(1e-3, 1e3))
    def test_invariant_under_scaling(self, seed, cls, k):
        rng = np.random.default_rng(seed)
        q = transform(standard_quadric(cls, **random_params(cls, rng)), RigidMotion.random(rng, 3.0))
        assert classify(q.scaled(k)) is cls

    @given(seeds, st.sampled_from(TABLE_CLASSES))
    def test_negation_keeps_class_and_swaps_sides(self, seed, cls):
        # -q has the same zero set, so the class stays while the sides swap
        rng = np.random.default_rng(seed)
        q = transform(standard_quadric(cls, **random_params(cls, rng)), RigidMotion.random(rng, 3.0))
        neg = q.scaled(-1.0)
        assert classify(neg) is cls
        p = rng.normal(size=3) * 3
        assert evaluate(neg, p) == -evaluate(q, p)
        if cls not in (C.HYPERBOLOID_ONE_SHEET, C.HYPERBOLIC_PARABOLOID):
            assert orientation(neg) == -orientation(q)


class TestReducedForm:
    def test_tree_ellipsoid(self):
        rf = reduced_form(quadric_from_coefficients(1, 1, 3, 0, 0, 0, 0, 0, -3 * 8.36291, 3 * 8.36291 ** 2 - 20))
        assert rf.cls is C.ELLIPSOID
        assert (rf["a"], rf["b"], rf["c"]) == pytest.approx((1, 1, 3 ** -0.5))
        assert rf["d"] == pytest.approx(math.sqrt(20))

    def test_tree_hyperboloid(self):
        rf = reduced_form(HYPERBOLOID)
        assert (rf["a"], rf["b"], rf["c"], rf["d"]) == pytest.approx((1, 1, 2, 1))

    def test_already_reduced(self):
        rf = reduced_form(quadric_from_coefficients(0.25, 1 / 9, 1, 0, 0, 0, 0, 0, 0, -1))
        assert (rf["a"], rf["b"], rf["c"]) == pytest.approx((3, 2, 1))
        assert rf["d"] == pytest.approx(1)

    @pytest.mark.parametrize("cls, params, expected", [
        (C.ELLIPTIC_PARABOLOID, {"a": 2.0, "b": 1.0}, {"a": 2.0, "b": 1.0, "L": 1.0}),
        (C.HYPERBOLIC_PARABOLOID, {"a": 2.0, "b": 1.0}, {"a": 2.0, "b": 1.0, "L": 1.0}),
        (C.ELLIPTIC_CYLINDER, {"a": 3.0, "b": 2.0}, {"a": 3.0, "b": 2.0, "M": 1.0}),
        (C.HYPERBOLIC_CYLINDER, {"a": 3.0, "b": 2.0}, {"a": 3.0, "b": 2.0, "M": 1.0}),
        (C.PARABOLIC_CYLINDER, {"a": 2.0}, {"a": 2.0, "d": 1.0}),
        (C.PARALLEL_PLANES, {"a": 2.0}, {"a": 2.0, "d": 1.0}),
    ])
    def test_standard_rows(self, cls, params, expected):
        # each standard form has unit right side, so d', L and M are 1
        rf = reduced_form(standard_quadric(cls, **params))
        assert rf.cls is cls
        assert rf.params == pytest.approx(expected)

    def test_cone_is_unsupported(self):
        with pytest.raises(UnsupportedClassError):
            reduced_form(quadric_from_coefficients(1, 1, -1, 0, 0, 0, 0, 0, 0, 0))

    @given(seeds, st.sampled_from(TABLE_CLASSES))
    def test_rigid_invariance(self, seed, cls):
        rng = np.random.default_rng(seed)
        q = standard_quadric(cls, **random_params(cls, rng))
        a = reduced_form(q)
        b = reduced_form(transform(q, RigidMotion.random(rng, 5.0)))
        assert a.cls is b.cls
        assert b.params == pytest.approx(a.params, rel=1e-7)

    @given(seeds, st.sampled_from(TABLE_CLASSES))
    def test_parameters_positive_and_ordered(self, seed, cls):
        rng = np.random.default_rng(seed)
        q = transform(standard_quadric(cls, **random_params(cls, rng)), RigidMotion.random(rng, 2.0))
        p = reduced_form(q).params
        assert all(v > 0 for v in p.values())
        if cls in (C.ELLIPSOID, C.HYPERBOLOID_ONE_SHEET, C.HYPERBOLOID_TWO_SHEETS, C.ELLIPTIC_PARABOLOID,
                   C.HYPERBOLIC_PARABOLOID, C.ELLIPTIC_CYLINDER):
            assert p["a"] >= p["b"]
        if cls is C.ELLIPSOID:
            assert p["b"] >= p["c"]
