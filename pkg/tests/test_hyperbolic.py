import mpmath as mp
import numpy as np
import pytest

from packingforge.errors import DegenerateTriangleError, WeightConditionViolatedError
from packingforge.euclidean import euclidean_angles, euclidean_lengths
from packingforge.hyperbolic import (
    hyperbolic_admissible,
    hyperbolic_angle_jacobian,
    hyperbolic_angles,
    hyperbolic_certificate,
    hyperbolic_extended_angles,
    hyperbolic_lengths,
    triangle_area,
    uniform_radius_bound,
)
from packingforge.surface import face_gammas

mp.mp.dps = 40


def mp_length(rj, rk, i_val):
    return float(mp.acosh(mp.cosh(rj) * mp.cosh(rk)
                          + i_val * mp.sinh(rj) * mp.sinh(rk)))


def direct_test(lengths):
    return np.all(np.roll(lengths, -1, axis=-1) + np.roll(lengths, -2, axis=-1)
                  > lengths, axis=-1)


def sample_gamma_ok(rng, n, lo=-0.999, hi=10.0):
    out = np.empty((0, 3))
    while len(out) < n:
        w = rng.uniform(lo, hi, size=(2 * n, 3))
        out = np.vstack([out, w[np.all(face_gammas(w) >= 0, axis=1)]])
    return out[:n]


class TestLengths:
    def test_tangency_doubles_the_radius(self):
        for r in (0.3, 1.0, 2.5):
            l = hyperbolic_lengths([9.9, r, r], [1.0, 0.0, 0.0])
            assert l[0] == pytest.approx(2 * r, rel=1e-14)

    def test_orthogonal_unit_circles(self):
        l = hyperbolic_lengths([1.0, 1.0, 1.0], [0.0, 0.0, 0.0])
        assert l[0] == pytest.approx(float(mp.acosh(mp.cosh(1) ** 2)), rel=1e-15)
        assert l[0] == pytest.approx(1.5133740065965, rel=1e-12)

    def test_small_radius_limit(self):
        l = hyperbolic_lengths([1e-8, 1e-8, 1e-8], [0.5, 0.5, 0.5])
        assert np.all(l < 1e-7)
        assert np.all(l > 0)

    def test_matches_high_precision_over_wide_range(self, rng):
        for _ in range(60):
            r = np.exp(rng.uniform(np.log(1e-3), np.log(690), size=3))
            w = rng.uniform(-0.99, 10.0, size=3)
            l = hyperbolic_lengths(r, w)
            for m in range(3):
                truth = mp_length(r[(m + 1) % 3], r[(m + 2) % 3], w[m])
                assert l[m] == pytest.approx(truth, rel=1e-13)

    def test_huge_radii_stay_finite(self):
        l = hyperbolic_lengths([1e3, 1e3, 1e3], [0.5, 0.5, 0.5])
        assert np.all(np.isfinite(l))
        assert l[0] == pytest.approx(2000.0 + np.log(0.75), abs=1e-9)


class TestAdmissibility:
    def test_zhou_range_always_admissible(self, rng):
        w = sample_gamma_ok(rng, 2000, hi=1.0)
        r = np.exp(rng.uniform(np.log(1e-3), np.log(1e3), size=(2000, 3)))
        adm, _ = hyperbolic_admissible(r, w)
        assert np.all(adm)

    def test_equal_radii_above_threshold(self):
        s = float(np.arcsinh(np.sqrt(1 / 6))) + 1e-3
        adm, _ = hyperbolic_admissible([s, s, s], [2.0, 2.0, 2.0])
        assert adm is True

    def test_squeezed_triangle_inadmissible(self):
        r, w = [1.0, 1.0, 0.05], [0.0, 0.0, 10.0]
        adm, _ = hyperbolic_admissible(r, w)
        assert adm is False
        l = hyperbolic_lengths(r, w)
        assert l[2] > l[0] + l[1]

    def test_certificate_matches_direct_test(self, rng):
        w = rng.uniform(-0.999, 10.0, size=(20000, 3))
        r = np.exp(rng.uniform(np.log(1e-3), np.log(1e3), size=(20000, 3)))
        adm, _ = hyperbolic_admissible(r, w)
        assert np.array_equal(np.asarray(adm),
                              direct_test(hyperbolic_lengths(r, w)))


class TestUniformRadiusBound:
    def test_reference_value(self):
        s = uniform_radius_bound([2.0, 2.0, 2.0])
        assert s == pytest.approx(float(mp.asinh(mp.sqrt(mp.mpf(1) / 6))),
                                  rel=1e-14)
        assert s == pytest.approx(0.397682730611952, rel=1e-12)

    def test_tangent_weights_need_no_bound(self):
        assert uniform_radius_bound([1.0, 1.0, 1.0]) == 0.0

    def test_sufficiency(self, rng):
        w = sample_gamma_ok(rng, 500)
        s = uniform_radius_bound(w) + 0.01
        adm, _ = hyperbolic_admissible(np.repeat(s[:, None], 3, axis=1), w)
        assert np.all(adm)

    def test_requires_gamma_condition(self):
        with pytest.raises(WeightConditionViolatedError):
            uniform_radius_bound([-0.9, -0.9, 0.0])


class TestAngles:
    def test_equilateral_formula(self):
        for a in (0.25, 1.0, 3.0):
            th = hyperbolic_angles([a, a, a])
            expected = float(mp.acos(mp.cosh(a) / (mp.cosh(a) + 1)))
            assert th[0] == pytest.approx(expected, rel=1e-13)
        assert hyperbolic_angles([1.0, 1.0, 1.0])[0] == pytest.approx(
            0.918797872178027, rel=1e-12)

    def test_euclidean_limit(self):
        th = hyperbolic_angles([1e-5, 1e-5, 1e-5])
        assert np.allclose(th, np.pi / 3, atol=1e-9)

    def test_angle_sum_below_pi_and_area_positive(self, rng):
        w = sample_gamma_ok(rng, 500, hi=1.0)
        r = np.exp(rng.uniform(-2, 1, size=(500, 3)))
        th = hyperbolic_angles(hyperbolic_lengths(r, w))
        areas = triangle_area(th)
        assert np.all(th.sum(axis=1) < np.pi)
        assert np.all(areas > 0)
        assert np.max(np.abs(th.sum(axis=1) + areas - np.pi)) < 1e-12

    def test_matches_cosine_law_form(self, rng):
        # the half-angle evaluation agrees with the direct cosine-law ratio
        for _ in range(200):
            r = np.exp(rng.uniform(-1.5, 1.5, size=3))
            w = rng.uniform(-0.9, 1.0, size=3)
            if np.any(face_gammas(w) < 0):
                continue
            l = hyperbolic_lengths(r, w)
            th = hyperbolic_angles(l)
            lj, lk = np.roll(l, -1), np.roll(l, -2)
            cos_direct = ((np.cosh(lj) * np.cosh(lk) - np.cosh(l))
                          / (np.sinh(lj) * np.sinh(lk)))
            assert np.max(np.abs(np.cos(th) - cos_direct)) < 1e-12

    def test_large_triangle_angles(self):
        th = hyperbolic_angles([100.0, 100.0, 100.0])
        assert np.all(th > 0)
        assert th.sum() < 1e-20  # ideal-triangle limit

    def test_degenerate_raises(self):
        with pytest.raises(DegenerateTriangleError):
            hyperbolic_angles([3.0, 1.0, 1.0])

    def test_small_radius_agrees_with_euclidean(self, rng):
        w = sample_gamma_ok(rng, 300, hi=1.0)
        r = np.exp(rng.uniform(np.log(1e-4), np.log(1e-3), size=(300, 3)))
        th_h = hyperbolic_angles(hyperbolic_lengths(r, w))
        th_e = euclidean_angles(euclidean_lengths(r, w))
        assert np.max(np.abs(th_h - th_e)) < 1e-4

    def test_area_vanishes_with_radius(self):
        r = np.full(3, 1e-4)
        th = hyperbolic_angles(hyperbolic_lengths(r, [0.5, 0.5, 0.5]))
        assert triangle_area(th) < 1e-6


class TestExtendedAngles:
    def test_equals_angles_on_admissible(self, rng):
        w = sample_gamma_ok(rng, 300, hi=1.0)
        r = np.exp(rng.uniform(-1, 1, size=(300, 3)))
        assert np.array_equal(hyperbolic_extended_angles(r, w),
                              hyperbolic_angles(hyperbolic_lengths(r, w)))

    def test_constant_values_outside(self):
        ext = hyperbolic_extended_angles([1.0, 1.0, 0.05], [0.0, 0.0, 10.0])
        assert np.allclose(ext, [0.0, 0.0, np.pi])

    def test_refuses_negative_gamma(self):
        with pytest.raises(WeightConditionViolatedError):
            hyperbolic_extended_angles([1.0, 1.0, 1.0], [-0.9, -0.9, 0.0])

    def test_continuity_across_boundary(self):
        w = np.array([0.0, 0.0, 10.0])

        def admissible(t):
            adm, _ = hyperbolic_admissible(np.array([1.0, 1.0, t]), w)
            return adm

        ts = 1.2 + np.arange(0, 0.1, 1e-5)
        radii = np.column_stack([np.ones_like(ts), np.ones_like(ts), ts])
        adm, _ = hyperbolic_admissible(radii, w)
        assert adm[0] != adm[-1]
        flip = int(np.nonzero(adm[:-1] != adm[1:])[0][0])
        lo, hi = ts[flip], ts[flip + 1]
        lo_side = adm[flip]
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if admissible(mid) == lo_side:
                lo = mid
            else:
                hi = mid
        jump = np.max(np.abs(hyperbolic_extended_angles([1.0, 1.0, lo], w)
                             - hyperbolic_extended_angles([1.0, 1.0, hi], w)))
        assert jump < 1e-6


class TestJacobian:
    def test_symmetry_and_zero_outside(self, rng):
        w = sample_gamma_ok(rng, 200)
        r = np.exp(rng.uniform(-1.5, 1.0, size=(200, 3)))
        J = hyperbolic_angle_jacobian(r, w)
        assert np.max(np.abs(J - np.swapaxes(J, 1, 2))) == 0.0
        J0 = hyperbolic_angle_jacobian([1.0, 1.0, 0.05], [0.0, 0.0, 10.0])
        assert np.all(J0 == 0.0)

    def test_negative_definite(self, rng):
        w = sample_gamma_ok(rng, 300)
        r = np.exp(rng.uniform(-1.5, 1.0, size=(300, 3)))
        cert, scale = hyperbolic_certificate(r, w)
        keep = cert > 1e-2 * scale
        J = hyperbolic_angle_jacobian(r[keep], w[keep])
        evals = np.linalg.eigvalsh(J)
        assert np.all(evals[:, 2] < 0)

    def test_matches_finite_differences(self, rng):
        w = sample_gamma_ok(rng, 50)
        r = np.exp(rng.uniform(-1.0, 0.7, size=(50, 3)))
        cert, scale = hyperbolic_certificate(r, w)
        keep = cert > 1e-2 * scale
        r, w = r[keep], w[keep]
        J = hyperbolic_angle_jacobian(r, w)
        h = 1e-6
        u = np.log(np.tanh(r / 2))
        fd = np.empty_like(J)
        for b in range(3):
            up, um = u.copy(), u.copy()
            up[:, b] += h
            um[:, b] -= h
            tp = hyperbolic_angles(hyperbolic_lengths(2 * np.arctanh(np.exp(up)), w))
            tm = hyperbolic_angles(hyperbolic_lengths(2 * np.arctanh(np.exp(um)), w))
            fd[:, :, b] = (tp - tm) / (2 * h)
        scale = np.abs(J).reshape(len(J), -1).max(axis=1)
        rel = np.abs(J - fd).reshape(len(J), -1).max(axis=1) / scale
        assert rel.max() < 1e-6

    def test_offdiagonals_nonnegative_in_zhou_range(self, rng):
        w = sample_gamma_ok(rng, 300, hi=1.0)
        r = np.exp(rng.uniform(-1.5, 1.0, size=(300, 3)))
        J = hyperbolic_angle_jacobian(r, w)
        off = np.stack([J[:, 0, 1], J[:, 0, 2], J[:, 1, 2]])
        assert off.min() >= -1e-12

    def test_row_sums_negative_in_zhou_range(self, rng):
        # diagonal dominance conclusion for weights in (-1, 1]
        w = sample_gamma_ok(rng, 300, hi=1.0)
        r = np.exp(rng.uniform(-1.5, 1.0, size=(300, 3)))
        J = hyperbolic_angle_jacobian(r, w)
        assert J.sum(axis=2).max() < 0
