"""Euclidean, sphere, and hyperbolic geometry against closed-form oracles."""

import numpy as np
import pytest

import riemgeo as rg
from riemgeo.elementary import _mink

HR = rg.HyperbolicRepresentation


class TestEuclidean:
    def test_translation_formulas(self):
        m = rg.Euclidean(3)
        p = np.array([1.0, 2.0, 3.0])
        assert np.array_equal(m.exp(p, np.array([1.0, 0.0, 0.0])), [2.0, 2.0, 3.0])
        assert np.array_equal(m.log(p, np.array([2.0, 2.0, 3.0])), [1.0, 0.0, 0.0])
        assert m.distance(p, p) == 0.0
        assert m.inner(p, np.array([1.0, 2.0, 3.0]), np.array([1.0, 0.0, 0.0])) == 1.0

    def test_roundtrip_is_exact(self, rng):
        m = rg.Euclidean(3)
        p = m.rand_point(rng)
        q = m.rand_point(rng)
        assert np.array_equal(m.exp(p, m.log(p, q)), q) or np.allclose(
            m.exp(p, m.log(p, q)), q, rtol=0, atol=1e-15
        )

    def test_matrix_shaped_points(self, rng):
        m = rg.Euclidean((2, 3))
        assert m.dim == 6
        p = m.rand_point(rng)
        X = m.rand_tangent(p, rng)
        assert m.exp(p, X).shape == (2, 3)
        assert m.distance(p, m.exp(p, X)) == pytest.approx(np.linalg.norm(X))

    def test_transport_is_identity(self, rng):
        m = rg.Euclidean(3)
        p, q = m.rand_point(rng), m.rand_point(rng)
        X = m.rand_tangent(p, rng)
        assert np.array_equal(m.parallel_transport(p, q, X), X)
        assert np.array_equal(m.vector_transport(p, q, X, rg.VectorTransport.PROJECTION), X)

    def test_any_retraction_is_addition(self, rng):
        m = rg.Euclidean(3)
        p, X = m.rand_point(rng), rng.standard_normal(3)
        for method in rg.Retraction:
            assert np.allclose(m.retract(p, X, method), p + X, rtol=0, atol=0)
        back = m.inverse_retract(p, p + X, rg.InverseRetraction.PROJECTION)
        np.testing.assert_allclose(back, X, rtol=0, atol=1e-15)


class TestSphere:
    def setup_method(self):
        self.m = rg.Sphere(2)
        self.e1 = np.array([1.0, 0.0, 0.0])
        self.e2 = np.array([0.0, 1.0, 0.0])
        self.e3 = np.array([0.0, 0.0, 1.0])

    def test_golden_quarter_circle(self):
        assert self.m.distance(self.e1, self.e2) == np.pi / 2
        np.testing.assert_allclose(
            self.m.log(self.e1, self.e2), [0.0, np.pi / 2, 0.0], atol=1e-15
        )
        np.testing.assert_allclose(
            self.m.exp(self.e3, np.array([np.pi / 2, 0.0, 0.0])), self.e1, atol=1e-15
        )

    def test_half_circle_exp(self):
        q = self.m.exp(self.e1, np.array([0.0, np.pi, 0.0]))
        np.testing.assert_allclose(q, [-1.0, 0.0, 0.0], atol=1e-15)
        assert self.m.distance(self.e1, q) == pytest.approx(np.pi)

    def test_antipodal_log_undefined(self):
        with pytest.raises(rg.LogUndefined):
            self.m.log(self.e1, -self.e1)
        with pytest.raises(rg.TransportUndefined):
            self.m.parallel_transport(self.e1, -self.e1, self.e3)

    def test_exp_stays_on_sphere(self, rng):
        for _ in range(200):
            p = self.m.rand_point(rng)
            X = self.m.rand_tangent(p, rng)
            assert abs(np.linalg.norm(self.m.exp(p, X)) - 1.0) < 1e-12

    def test_log_series_regime_matches_direct_formula(self, rng):
        p = self.m.rand_point(rng)
        X = self.m.rand_tangent(p, rng)
        X *= 1e-5 / np.linalg.norm(X)
        q = self.m.exp(p, X)
        np.testing.assert_allclose(self.m.log(p, q), X, rtol=1e-10, atol=1e-18)

    def test_transport_examples(self):
        # normal to the geodesic plane: unchanged
        np.testing.assert_allclose(
            self.m.parallel_transport(self.e1, self.e2, self.e3), self.e3, atol=1e-15
        )
        # in-plane vector rotates with the geodesic by pi/2
        np.testing.assert_allclose(
            self.m.parallel_transport(self.e1, self.e2, self.e2), -self.e1, atol=1e-15
        )

    def test_transport_tangency_and_isometry(self, rng):
        for _ in range(100):
            p = self.m.rand_point(rng)
            X = self.m.rand_tangent(p, rng)
            q = self.m.exp(p, 0.4 * self.m.rand_tangent(p, rng))
            t = self.m.parallel_transport(p, q, X)
            assert abs(np.dot(q, t)) < 1e-10
            assert abs(self.m.norm(q, t) - self.m.norm(p, X)) < 1e-10

    def test_octant_loop_holonomy_matches_enclosed_area(self):
        # Transporting around the octant loop rotates the tangent plane by
        # the enclosed spherical area (an octant: pi/2), mapping e3 to -e2.
        m = self.m
        X = self.e3
        X = m.parallel_transport(self.e1, self.e2, X)
        X = m.parallel_transport(self.e2, self.e3, X)
        X = m.parallel_transport(self.e3, self.e1, X)
        np.testing.assert_allclose(X, -self.e2, atol=1e-9)
        # rotation angle in the tangent plane at e1 spanned by (e2, e3)
        angle = np.arctan2(np.dot(X, self.e2), np.dot(X, self.e3))
        assert abs(abs(angle) - np.pi / 2) < 1e-9

    def test_projection_vector_transport_examples(self):
        # already tangent at q: unchanged; parallel to q: projects to zero
        np.testing.assert_allclose(
            self.m.vector_transport(self.e1, self.e2, self.e3, rg.VectorTransport.PROJECTION),
            self.e3,
            atol=0,
        )
        np.testing.assert_allclose(
            self.m.vector_transport(self.e1, self.e2, self.e2, rg.VectorTransport.PROJECTION),
            np.zeros(3),
            atol=0,
        )

    def test_projection_retraction_example(self):
        q = self.m.retract(self.e1, self.e2, rg.Retraction.PROJECTION)
        np.testing.assert_allclose(q, np.array([1.0, 1.0, 0.0]) / np.sqrt(2), atol=1e-15)
        back = self.m.inverse_retract(self.e1, q, rg.InverseRetraction.PROJECTION)
        np.testing.assert_allclose(back, self.e2, atol=1e-14)

    def test_projection_inverse_fails_outside_hemisphere(self):
        with pytest.raises(rg.InverseRetractionUndefined):
            self.m.inverse_retract(self.e1, -self.e1, rg.InverseRetraction.PROJECTION)

    def test_project_point(self):
        np.testing.assert_allclose(
            self.m.project_point(np.array([2.0, 0.0, 0.0])), self.e1, atol=0
        )
        with pytest.raises(rg.ProjectionUndefined):
            self.m.project_point(np.zeros(3))

    def test_project_tangent_removes_radial_component(self):
        out = self.m.project_tangent(self.e1, np.array([5.0, 1.0, 0.0]))
        np.testing.assert_allclose(out, self.e2, atol=1e-15)

    def test_membership(self):
        assert self.m.is_point(self.e1)
        assert not self.m.is_point(2 * self.e1)
        assert self.m.is_tangent(self.e1, self.e2)
        assert not self.m.is_tangent(self.e1, self.e1 + self.e2)

    def test_coordinates_at_north_pole(self):
        basis = self.m.default_basis(self.e3)
        np.testing.assert_allclose(basis.vectors[0], self.e1, atol=0)
        np.testing.assert_allclose(basis.vectors[1], self.e2, atol=0)
        coords = self.m.get_coordinates(self.e3, np.array([0.3, -0.7, 0.0]), basis)
        np.testing.assert_allclose(coords, [0.3, -0.7], atol=1e-16)


class TestHyperbolic:
    def test_unit_speed_geodesic_distance(self):
        m = rg.Hyperbolic(2, HR.HYPERBOLOID)
        p = np.array([0.0, 0.0, 1.0])
        q = np.array([0.0, np.sinh(1.0), np.cosh(1.0)])
        assert abs(m.distance(p, q) - 1.0) < 1e-12

    def test_exp_preserves_hyperboloid_constraint(self, rng):
        m = rg.Hyperbolic(3, HR.HYPERBOLOID)
        for _ in range(100):
            p = m.rand_point(rng)
            X = m.rand_tangent(p, rng)
            q = m.exp(p, X)
            assert abs(float(_mink(q, q)) + 1.0) < 1e-10

    def test_origin_conversion_chain(self):
        m = rg.Hyperbolic(2, HR.HYPERBOLOID)
        origin = np.array([0.0, 0.0, 1.0])
        ball = m.convert(origin, HR.POINCARE_BALL)
        np.testing.assert_allclose(ball, [0.0, 0.0], atol=0)
        half = m.convert(origin, HR.POINCARE_HALF_SPACE)
        back = rg.Hyperbolic(2, HR.POINCARE_HALF_SPACE).convert(half, HR.HYPERBOLOID)
        np.testing.assert_allclose(back, origin, atol=1e-12)

    @pytest.mark.parametrize("rep", list(HR))
    def test_conversion_roundtrip(self, rep, rng):
        m = rg.Hyperbolic(2, HR.HYPERBOLOID)
        src = rg.Hyperbolic(2, rep)
        for _ in range(20):
            p = src.rand_point(rng)
            for other in HR:
                there = src.convert(p, other)
                assert rg.Hyperbolic(2, other).is_point(there)
                back = rg.Hyperbolic(2, other).convert(there, rep)
                np.testing.assert_allclose(back, p, atol=1e-12)

    def test_distance_preserved_across_representations(self, rng):
        hyp = rg.Hyperbolic(2, HR.HYPERBOLOID)
        ball = rg.Hyperbolic(2, HR.POINCARE_BALL)
        half = rg.Hyperbolic(2, HR.POINCARE_HALF_SPACE)
        for _ in range(100):
            p, q = hyp.rand_point(rng), hyp.rand_point(rng)
            d = np.arccosh(max(-float(_mink(p, q)), 1.0))  # reference formula
            pb, qb = hyp.convert(p, HR.POINCARE_BALL), hyp.convert(q, HR.POINCARE_BALL)
            pu, qu = (
                hyp.convert(p, HR.POINCARE_HALF_SPACE),
                hyp.convert(q, HR.POINCARE_HALF_SPACE),
            )
            assert abs(ball.distance(pb, qb) - d) < 1e-10
            assert abs(half.distance(pu, qu) - d) < 1e-10

    def test_ball_distance_against_mobius_closed_form(self, rng):
        # cosh d = 1 + 2 |y-z|^2 / ((1-|y|^2)(1-|z|^2))
        ball = rg.Hyperbolic(3, HR.POINCARE_BALL)
        for _ in range(50):
            y, z = ball.rand_point(rng), ball.rand_point(rng)
            ry, rz = np.sum(y * y), np.sum(z * z)
            oracle = np.arccosh(1 + 2 * np.sum((y - z) ** 2) / ((1 - ry) * (1 - rz)))
            assert ball.distance(y, z) == pytest.approx(oracle, rel=1e-10, abs=1e-12)

    def test_half_space_distance_against_closed_form(self, rng):
        # cosh d = 1 + |u-v|^2 / (2 u_n v_n)
        half = rg.Hyperbolic(2, HR.POINCARE_HALF_SPACE)
        for _ in range(50):
            u, v = half.rand_point(rng), half.rand_point(rng)
            oracle = np.arccosh(1 + np.sum((u - v) ** 2) / (2 * u[-1] * v[-1]))
            assert half.distance(u, v) == pytest.approx(oracle, rel=1e-10, abs=1e-12)

    @pytest.mark.parametrize("rep", [HR.POINCARE_BALL, HR.POINCARE_HALF_SPACE])
    def test_representation_independent_operations(self, rep, rng):
        # computing natively must agree with convert -> hyperboloid -> convert
        hyp = rg.Hyperbolic(2, HR.HYPERBOLOID)
        m = rg.Hyperbolic(2, rep)
        for _ in range(30):
            p = m.rand_point(rng)
            X = m.rand_tangent(p, rng)
            native = m.exp(p, X)
            ph = m.convert(p, HR.HYPERBOLOID)
            Xh = m.convert_tangent(p, X, HR.HYPERBOLOID)
            via = hyp.convert(hyp.exp(ph, Xh), rep)
            np.testing.assert_allclose(native, via, atol=1e-9)

    def test_tangent_conversion_matches_finite_differences(self, rng):
        src = rg.Hyperbolic(2, HR.POINCARE_BALL)
        for rep in (HR.HYPERBOLOID, HR.POINCARE_HALF_SPACE):
            for _ in range(20):
                p = src.rand_point(rng)
                v = 0.3 * rng.standard_normal(2)
                pushed = src.convert_tangent(p, v, rep)
                h = 1e-6
                fd = (src.convert(p + h * v, rep) - src.convert(p - h * v, rep)) / (2 * h)
                np.testing.assert_allclose(pushed, fd, rtol=1e-6, atol=1e-8)

    def test_log_never_undefined_far_apart(self, rng):
        # points at distance 10: conditioning degrades like e^d, but the log
        # stays defined and the roundtrip holds to the achievable precision
        m = rg.Hyperbolic(2, HR.HYPERBOLOID)
        x = np.array([np.sinh(5.0), 0.0, np.cosh(5.0)])
        y = np.array([-np.sinh(5.0), 0.0, np.cosh(5.0)])
        X = m.log(x, y)
        assert m.norm(x, X) == pytest.approx(10.0, rel=1e-12)
        np.testing.assert_allclose(m.exp(x, X), y, rtol=1e-7)

    def test_representation_tag_required(self):
        with pytest.raises(TypeError):
            rg.Hyperbolic(2, "hyperboloid")

    def test_membership_per_representation(self):
        hyp = rg.Hyperbolic(2, HR.HYPERBOLOID)
        assert hyp.is_point(np.array([0.0, 0.0, 1.0]))
        assert not hyp.is_point(np.array([0.0, 0.0, -1.0]))  # wrong sheet
        assert not hyp.is_point(np.array([1.0, 0.0, 1.0]))
        ball = rg.Hyperbolic(2, HR.POINCARE_BALL)
        assert ball.is_point(np.array([0.3, 0.4]))
        assert not ball.is_point(np.array([0.8, 0.7]))
        half = rg.Hyperbolic(2, HR.POINCARE_HALF_SPACE)
        assert half.is_point(np.array([5.0, 0.1]))
        assert not half.is_point(np.array([0.0, -0.1]))

    def test_hyperboloid_projection(self, rng):
        m = rg.Hyperbolic(2, HR.HYPERBOLOID)
        a = np.array([0.3, -0.2, 1.4])
        p = m.project_point(a)
        assert m.is_point(p)
        with pytest.raises(rg.ProjectionUndefined):
            m.project_point(np.array([1.0, 0.0, 0.5]))  # spacelike
