"""Tests for the Minkowski-model kernel, including the marching oracle."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import hypergrid.hyperboloid as hm

RNG = np.random.default_rng(20240611)


def random_point(n=2, scale=2.0, rng=RNG):
    return hm.point_from_spatial(rng.normal(size=n) * scale)


def random_translation(n=2, scale=2.0, rng=RNG):
    return hm.translation_to(random_point(n, scale, rng))


def march_oracle(p, v, normal, t_max=6.0, dt=1e-4):
    """Dense t-march detecting the first sign change of <g(t), n>."""
    ts = np.arange(0.0, t_max, dt)
    pts = np.outer(np.cosh(ts), p) + np.outer(np.sinh(ts), v)
    vals = hm.inner_rows(pts, normal)
    if abs(vals[0]) < 1e-12:
        return 0.0
    flips = np.nonzero(np.sign(vals[1:]) != np.sign(vals[0]))[0]
    if len(flips) == 0:
        return None
    return ts[flips[0]]


class TestInner:
    def test_origin_norm(self):
        assert hm.minkowski_inner((0, 0, 1), (0, 0, 1)) == -1

    def test_unit_spacelike(self):
        assert hm.minkowski_inner((1, 0, 0), (1, 0, 0)) == 1

    def test_boosted_origin(self):
        v = (math.sinh(1), 0, math.cosh(1))
        assert hm.minkowski_inner((0, 0, 1), v) == pytest.approx(-math.cosh(1))

    def test_length_mismatch(self):
        with pytest.raises(hm.GeometryError):
            hm.minkowski_inner((1, 0), (1, 0, 0))


class TestDistance:
    def test_zero(self):
        o = hm.origin(2)
        assert hm.distance(o, o) == 0.0

    def test_parameterized(self):
        o = hm.origin(2)
        p = np.array([math.sinh(1.0), 0.0, math.cosh(1.0)])
        assert hm.distance(o, p) == pytest.approx(1.0, abs=1e-12)

    def test_symmetric(self):
        for _ in range(50):
            a, b = random_point(), random_point()
            assert hm.distance(a, b) == pytest.approx(hm.distance(b, a), abs=1e-12)

    def test_isometry_invariant(self):
        for _ in range(50):
            a, b, m = random_point(), random_point(), random_translation()
            assert abs(hm.distance(m @ a, m @ b) - hm.distance(a, b)) < 1e-8


class TestGeodesic:
    def test_t_zero(self):
        p = random_point()
        v = hm.project_direction(p, np.array([1.0, 0.3, 0.0]))
        assert np.allclose(hm.geodesic_at(p, v, 0.0), p)

    def test_axis(self):
        o = hm.origin(2)
        v = np.array([1.0, 0.0, 0.0])
        got = hm.geodesic_at(o, v, 1.0)
        assert np.allclose(got, [math.sinh(1), 0, math.cosh(1)])

    def test_stays_on_sheet(self):
        for _ in range(50):
            p = random_point()
            v = hm.project_direction(p, RNG.normal(size=3))
            t = RNG.uniform(-3, 3)
            q = hm.geodesic_at(p, v, t)
            assert hm.minkowski_inner(q, q) == pytest.approx(-1.0, abs=1e-9)

    def test_rejects_non_tangent(self):
        with pytest.raises(hm.GeometryError):
            hm.geodesic_at(hm.origin(2), np.array([1.0, 0.0, 0.5]), 1.0)


class TestTranslation:
    def test_identity(self):
        assert np.allclose(hm.translation_to(hm.origin(2)), np.eye(3))

    def test_maps_origin(self):
        for n in (2, 3):
            for _ in range(30):
                p = random_point(n)
                m = hm.translation_to(p)
                hm.assert_isometry(m)
                assert np.max(np.abs(m @ hm.origin(n) - p)) < 1e-9

    def test_inverse_returns(self):
        p = random_point()
        m = hm.inverse(hm.translation_to(p))
        assert np.max(np.abs(m @ p - hm.origin(2))) < 1e-9


class TestReflection:
    def test_involution(self):
        n = np.array([math.cosh(0.7), 0.0, math.sinh(0.7)])
        r = hm.reflect_in_plane(n)
        assert np.max(np.abs(r @ r - np.eye(3))) < 1e-8

    def test_fixes_plane(self):
        normal = np.array([1.0, 0.0, 0.0])
        r = hm.reflect_in_plane(normal)
        p = hm.point_from_spatial([0.0, 1.3])
        assert np.allclose(r @ p, p)

    def test_sign_flip(self):
        r = hm.reflect_in_plane(np.array([1.0, 0.0, 0.0]))
        p = np.array([math.sinh(1), 0, math.cosh(1)])
        assert np.allclose(r @ p, [-math.sinh(1), 0, math.cosh(1)])

    def test_rejects_non_unit(self):
        with pytest.raises(hm.GeometryError):
            hm.reflect_in_plane(np.array([2.0, 0.0, 0.0]))


class TestRayPlaneHit:
    def test_axis_hit_both_orientations(self):
        o = hm.origin(2)
        v = np.array([1.0, 0.0, 0.0])
        n = np.array([math.cosh(1), 0.0, math.sinh(1)])
        assert hm.ray_plane_hit(o, v, n) == pytest.approx(1.0, abs=1e-12)
        assert hm.ray_plane_hit(o, v, -n) == pytest.approx(1.0, abs=1e-12)

    def test_ray_inside_plane(self):
        o = hm.origin(2)
        v = np.array([0.0, 1.0, 0.0])
        n = np.array([1.0, 0.0, 0.0])
        assert hm.ray_plane_hit(o, v, n) == 0.0

    def test_pointing_away(self):
        o = hm.origin(2)
        v = np.array([-1.0, 0.0, 0.0])
        n = np.array([math.cosh(1), 0.0, math.sinh(1)])
        assert hm.ray_plane_hit(o, v, n) is None

    def test_against_marching_oracle(self):
        rng = np.random.default_rng(7)
        checked = 0
        for _ in range(1000):
            p = random_point(2, 1.0, rng)
            v = hm.project_direction(p, rng.normal(size=3))
            # unit spacelike normal = a tangent vector at a random base point
            normal = hm.project_direction(random_point(2, 1.0, rng), rng.normal(size=3))
            got = hm.ray_plane_hit(p, v, normal)
            want = march_oracle(p, v, normal)
            if want is not None and want > 5.5:
                continue  # oracle horizon
            if want is None:
                assert got is None or got > 5.5
            else:
                assert got == pytest.approx(want, abs=1e-3)
            checked += 1
        assert checked > 900


class TestDiskProjection:
    def test_origin(self):
        assert np.allclose(hm.to_disk(hm.origin(2)), [0, 0])

    def test_half_argument(self):
        p = np.array([math.sinh(1), 0, math.cosh(1)])
        assert hm.to_disk(p)[0] == pytest.approx(math.tanh(0.5), abs=1e-12)

    def test_inside_unit_disk(self):
        for _ in range(100):
            p = random_point(2, 4.0)
            assert np.linalg.norm(hm.to_disk(p)) < 1.0


class TestComposition:
    def test_compose_matches_sequential(self):
        for _ in range(30):
            a, b, p = random_translation(), random_translation(), random_point()
            lhs = hm.compose(a, b) @ p
            rhs = a @ (b @ p)
            assert np.max(np.abs(lhs - rhs)) < 1e-8


class TestReorthonormalize:
    def test_identity_fixed(self):
        assert np.allclose(hm.reorthonormalize(np.eye(3)), np.eye(3))

    def test_idempotent(self):
        m = random_translation() @ random_translation()
        once = hm.reorthonormalize(m)
        twice = hm.reorthonormalize(once)
        assert np.max(np.abs(twice - once)) < 1e-12

    def test_drift_harness(self):
        # 1e4 compositions of small random translations, renormalizing on the
        # documented cadence, must stay within form tolerance.
        rng = np.random.default_rng(3)
        m = np.eye(3)
        for i in range(10_000):
            step = hm.translation_to(hm.point_from_spatial(rng.normal(size=2) * 0.01))
            m = m @ step
            if (i + 1) % hm.RENORM_EVERY == 0:
                m = hm.reorthonormalize(m)
        m = hm.reorthonormalize(m)
        assert hm.form_drift(m) < 1e-8

    def test_degenerate_raises(self):
        with pytest.raises(hm.GeometryError):
            hm.reorthonormalize(np.zeros((3, 3)))


@given(st.lists(st.floats(-3, 3), min_size=2, max_size=2),
       st.lists(st.floats(-3, 3), min_size=2, max_size=2))
@settings(max_examples=50, deadline=None)
def test_translation_composition_closes(xs, ys):
    """Composites of translations stay isometries and act associatively."""
    a = hm.translation_to(hm.point_from_spatial(xs))
    b = hm.translation_to(hm.point_from_spatial(ys))
    p = hm.origin(2)
    m = a @ b
    assert hm.form_drift(m) < 1e-10
    assert np.max(np.abs(m @ p - a @ (b @ p))) < 1e-10
