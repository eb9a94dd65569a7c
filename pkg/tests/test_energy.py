import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from elastica.descent import DescentParams
from elastica.energy import (
    discrete_energy,
    exact_gradient,
    fd_gradient,
    resilience_force,
    straightening_force,
)
from elastica.geometry import PolyCurve, edge_lengths

from util import TWO_PI, random_nondegenerate_polygon, regular_polygon


def _rotate(curve: PolyCurve, angle: float) -> PolyCurve:
    rot = np.array([[np.cos(angle), -np.sin(angle)], [np.sin(angle), np.cos(angle)]])
    v = curve.vertices @ rot.T
    return PolyCurve(v, edge_lengths(v))


class TestDiscreteEnergy:
    @pytest.mark.parametrize("n", [16, 100, 256])
    def test_regular_polygon_closed_form(self, n):
        # every angle is 2*pi/n, so the energy is n*tan^2(pi/n)
        curve = regular_polygon(n)
        expected = n * np.tan(np.pi / n) ** 2
        assert discrete_energy(curve).discrete == pytest.approx(expected, rel=1e-12)

    def test_breakdown_consistency(self):
        curve = random_nondegenerate_polygon(np.random.default_rng(0), 50)
        bd = discrete_energy(curve)
        assert bd.discrete == pytest.approx(bd.per_vertex.sum(), rel=1e-12)
        assert np.all(bd.per_vertex >= 0.0)

    def test_continuous_estimate_circle_limit(self):
        # unit-curvature circle of length 2*pi: the integral of kappa^2 is 2*pi
        estimates = [
            discrete_energy(regular_polygon(n, radius=1.0)).continuous_estimate for n in (100, 400, 1600)
        ]
        errors = [abs(e - TWO_PI) for e in estimates]
        assert errors[2] < errors[1] < errors[0]
        assert errors[2] < 2e-4

    @pytest.mark.parametrize("k", [2, 3])
    def test_continuous_estimate_multiple_cover(self, k):
        # circle covered k times at total length 2*pi has curvature k
        n = 1200
        curve = regular_polygon(n, k=k, radius=TWO_PI / (2 * n * np.sin(np.pi * k / n)))
        assert curve.perimeter == pytest.approx(TWO_PI, rel=1e-12)
        estimate = discrete_energy(curve).continuous_estimate
        assert estimate == pytest.approx(TWO_PI * k * k, rel=1e-4)

    def test_orientation_invariance(self):
        curve = random_nondegenerate_polygon(np.random.default_rng(5), 60)
        reversed_v = curve.vertices[::-1].copy()
        flipped = PolyCurve(reversed_v, edge_lengths(reversed_v))
        assert discrete_energy(flipped).discrete == pytest.approx(
            discrete_energy(curve).discrete, rel=1e-12
        )

    @given(scale=st.floats(0.1, 10.0), angle=st.floats(0, TWO_PI))
    @settings(max_examples=30, deadline=None)
    def test_similarity_invariance(self, scale, angle):
        curve = random_nondegenerate_polygon(np.random.default_rng(9), 40)
        rot = np.array([[np.cos(angle), -np.sin(angle)], [np.sin(angle), np.cos(angle)]])
        moved = scale * curve.vertices @ rot.T
        transformed = PolyCurve(moved, edge_lengths(moved))
        assert discrete_energy(transformed).discrete == pytest.approx(
            discrete_energy(curve).discrete, rel=1e-11
        )


class TestExactGradient:
    def test_matches_finite_differences(self):
        # the quantified gradient check: 100 random 40-gons; the absolute
        # floor is the central-difference rounding noise, eps*E_local/(2h)
        for seed in range(100):
            curve = random_nondegenerate_polygon(np.random.default_rng(seed), 40)
            exact = exact_gradient(curve)
            fd = fd_gradient(curve.vertices, 1e-6 * curve.mean_edge)
            scale = np.abs(exact).max()
            np.testing.assert_allclose(fd, exact, rtol=1e-5, atol=1e-9 * scale)

    def test_translation_invariance(self):
        curve = random_nondegenerate_polygon(np.random.default_rng(1), 40)
        moved = curve.vertices + np.array([123.0, -45.0])
        shifted = PolyCurve(moved, edge_lengths(moved))
        np.testing.assert_allclose(
            exact_gradient(shifted), exact_gradient(curve), rtol=0, atol=1e-12
        )

    def test_gradient_sums_to_zero(self):
        curve = random_nondegenerate_polygon(np.random.default_rng(2), 40)
        grad = exact_gradient(curve)
        assert np.abs(grad.sum(axis=0)).max() < 1e-9 * np.abs(grad).max()


class TestStraighteningForce:
    def test_matches_exact_gradient(self):
        params = DescentParams()
        curve = PolyCurve(*_square16())
        force = straightening_force(curve, params)
        expected = -params.c1 * exact_gradient(curve)
        np.testing.assert_allclose(force, expected, rtol=1e-4, atol=1e-10 * np.abs(expected).max())

    def test_near_straight_vertex_feels_nothing(self):
        # stadium shape: vertices inside the straight run have all adjacent
        # angles zero, and the gradient of tan^2(a/2) vanishes at a=0
        m = 24
        t = np.linspace(0.0, np.pi, m, endpoint=False)
        arc = np.column_stack([np.cos(t), np.sin(t)])
        flat = np.column_stack([np.linspace(-1.0, 1.0, m, endpoint=False), np.zeros(m)])
        v = np.vstack([flat, arc])
        curve = PolyCurve(v, edge_lengths(v))
        force = straightening_force(curve, DescentParams())
        magnitudes = np.hypot(force[:, 0], force[:, 1])
        straight_interior = magnitudes[3 : m - 3]
        assert straight_interior.max() < 1e-9 * magnitudes.max()

    def test_scale_behavior(self):
        # the energy and the sampled energy differences are scale-free (the
        # relative step tracks the mean edge), so the force scales exactly
        # like a gradient: s(lam * curve) = s(curve) / lam
        params = DescentParams()
        curve = random_nondegenerate_polygon(np.random.default_rng(4), 40)
        doubled = curve.scaled(2.0)
        f1 = straightening_force(curve, params)
        f2 = straightening_force(doubled, params)
        np.testing.assert_allclose(2.0 * f2, f1, rtol=1e-9, atol=1e-12 * np.abs(f1).max())

    def test_rotation_equivariance(self):
        params = DescentParams()
        curve = random_nondegenerate_polygon(np.random.default_rng(6), 40)
        angle = 0.7
        rot = np.array([[np.cos(angle), -np.sin(angle)], [np.sin(angle), np.cos(angle)]])
        f_then_rotate = straightening_force(curve, params) @ rot.T
        rotate_then_f = straightening_force(_rotate(curve, angle), params)
        scale = np.abs(f_then_rotate).max()
        np.testing.assert_allclose(rotate_then_f, f_then_rotate, rtol=1e-4, atol=1e-4 * scale)


def _square16():
    from elastica.geometry import ingest

    curve = ingest([[0, 0], [1, 0], [1, 1], [0, 1]], 16)
    return curve.vertices, curve.rest_lengths


class TestResilienceForce:
    def test_zero_at_rest(self):
        curve = regular_polygon(32)
        force = resilience_force(curve, DescentParams())
        assert np.abs(force).max() == 0.0

    def test_single_stretched_edge(self):
        params = DescentParams(c2=3.0)
        curve = regular_polygon(32)
        v = np.array(curve.vertices)
        # stretch edge 0 -> 1 along its own direction by delta
        direction = (v[1] - v[0]) / np.linalg.norm(v[1] - v[0])
        delta = 0.01
        v[1] = v[1] + delta * direction
        # rest lengths frozen from the regular polygon
        stretched = PolyCurve(v, curve.rest_lengths)
        force = resilience_force(stretched, params)
        e0 = v[1] - v[0]
        elen = np.linalg.norm(e0)
        expected_on_0 = params.c2 * e0 * (elen - curve.rest_lengths[0])
        np.testing.assert_allclose(force[0], expected_on_0 + 0.0, rtol=1e-12)
        # vertex 1 feels the opposite pull along edge 0, plus its other spring
        other = params.c2 * (v[2] - v[1]) * (np.linalg.norm(v[2] - v[1]) - curve.rest_lengths[1])
        np.testing.assert_allclose(force[1], -expected_on_0 + other, rtol=1e-12)

    def test_dilation_points_inward(self):
        params = DescentParams()
        curve = regular_polygon(64)
        grown = np.array(curve.vertices) * 1.05
        dilated = PolyCurve(grown, curve.rest_lengths)
        force = resilience_force(dilated, params)
        radial = grown / np.linalg.norm(grown, axis=1)[:, None]
        inward = (force * radial).sum(axis=1)
        assert np.all(inward < 0.0)

    def test_action_reaction_net_zero(self):
        curve = random_nondegenerate_polygon(np.random.default_rng(8), 48)
        rest = 0.9 * curve.rest_lengths  # uniformly stretched state
        stretched = PolyCurve(curve.vertices, rest)
        force = resilience_force(stretched, DescentParams())
        assert np.abs(force.sum(axis=0)).max() < 1e-12 * np.abs(force).max()


class TestForcePair:
    def test_total_is_the_step_displacement(self):
        from elastica.energy import force_pair

        params = DescentParams()
        curve = random_nondegenerate_polygon(np.random.default_rng(12), 40)
        pair = force_pair(curve, params)
        np.testing.assert_array_equal(
            pair.total, straightening_force(curve, params) + resilience_force(curve, params)
        )
        assert pair.straightening.shape == (40, 2)
        with pytest.raises(ValueError):
            pair.straightening[0, 0] = 1.0

    def test_rejects_mismatched_fields(self):
        from elastica.energy import ForcePair

        with pytest.raises(ValueError):
            ForcePair(np.zeros((4, 2)), np.zeros((5, 2)))
