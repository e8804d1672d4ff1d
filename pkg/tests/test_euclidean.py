import numpy as np
import pytest

from packingforge.errors import DegenerateTriangleError, WeightConditionViolatedError
from packingforge.euclidean import (
    euclidean_admissible,
    euclidean_angle_jacobian,
    euclidean_angles,
    euclidean_certificate,
    euclidean_extended_angles,
    euclidean_lengths,
)
from packingforge.surface import FaceWeightTriple, face_gammas


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
    def test_tangent_unit_circles(self):
        l = euclidean_lengths([1.0, 1.0, 1.0], [1.0, 1.0, 1.0])
        assert np.allclose(l, 2.0)

    def test_orthogonal_circles_pythagoras(self):
        l = euclidean_lengths([5.0, 3.0, 4.0], [0.0, 0.0, 0.0])
        assert l[0] == pytest.approx(5.0)

    def test_obtuse_intersection(self):
        l = euclidean_lengths([1.0, 1.0, 1.0], [-0.5, 0.0, 0.0])
        assert l[0] == pytest.approx(1.0)

    def test_accepts_weight_triple_object(self):
        l = euclidean_lengths([1.0, 1.0, 1.0], FaceWeightTriple(1, 1, 1))
        assert np.allclose(l, 2.0)


class TestAdmissibility:
    def test_certificate_value_tangent_case(self):
        adm, cert = euclidean_admissible([1.0, 1.0, 1.0], [1.0, 1.0, 1.0])
        assert adm is True
        assert cert == pytest.approx(12.0)

    def test_big_weight_squeezes_out_the_triangle(self):
        r, w = [1.0, 1.0, 0.1], [0.0, 0.0, 10.0]
        adm, _ = euclidean_admissible(r, w)
        assert adm is False
        l = euclidean_lengths(r, w)
        assert l[2] == pytest.approx(np.sqrt(22.0))
        assert l[0] + l[1] < l[2]

    def test_zhou_range_always_admissible(self, rng):
        w = sample_gamma_ok(rng, 3000, lo=-0.999, hi=1.0)
        r = np.exp(rng.uniform(np.log(1e-3), np.log(1e3), size=(3000, 3)))
        adm, _ = euclidean_admissible(r, w)
        assert np.all(adm)

    def test_certificate_matches_direct_test(self, rng):
        w = rng.uniform(-0.999, 10.0, size=(20000, 3))
        r = np.exp(rng.uniform(np.log(1e-3), np.log(1e3), size=(20000, 3)))
        adm, _ = euclidean_admissible(r, w)
        assert np.array_equal(adm, direct_test(euclidean_lengths(r, w)))


class TestAngles:
    def test_equilateral(self):
        assert np.allclose(euclidean_angles([1.0, 1.0, 1.0]), np.pi / 3)

    def test_right_triangle(self):
        th = euclidean_angles([5.0, 4.0, 3.0])
        assert th[0] == pytest.approx(np.pi / 2)
        assert th.sum() == pytest.approx(np.pi, abs=1e-12)

    def test_tangent_unit_circle_triangle_is_equilateral(self):
        th = euclidean_angles(euclidean_lengths([1.0, 1.0, 1.0], [1.0] * 3))
        assert np.allclose(th, np.pi / 3)

    def test_degenerate_raises(self):
        with pytest.raises(DegenerateTriangleError):
            euclidean_angles([2.0, 1.0, 1.0])
        with pytest.raises(DegenerateTriangleError):
            euclidean_angles([3.0, 1.0, 1.0])

    def test_angle_sum_property(self, rng):
        l = euclidean_lengths(
            np.exp(rng.uniform(-2, 2, size=(500, 3))),
            sample_gamma_ok(rng, 500, hi=1.0))
        th = euclidean_angles(l)
        assert np.max(np.abs(th.sum(axis=1) - np.pi)) < 1e-12

    def test_scaling_invariance(self, rng):
        w = sample_gamma_ok(rng, 200)
        r = np.exp(rng.uniform(-1, 1, size=(200, 3)))
        adm, _ = euclidean_admissible(r, w)
        r, w = r[adm], w[adm]
        base = euclidean_angles(euclidean_lengths(r, w))
        for lam in (1e-3, 7.0, 1e3):
            scaled = euclidean_angles(euclidean_lengths(lam * r, w))
            assert np.max(np.abs(scaled - base)) < 1e-12


class TestExtendedAngles:
    def test_equals_angles_on_admissible(self, rng):
        w = sample_gamma_ok(rng, 300, hi=1.0)
        r = np.exp(rng.uniform(-2, 2, size=(300, 3)))
        ext = euclidean_extended_angles(r, w)
        plain = euclidean_angles(euclidean_lengths(r, w))
        assert np.array_equal(ext, plain)

    def test_constant_values_outside(self):
        ext = euclidean_extended_angles([1.0, 1.0, 0.1], [0.0, 0.0, 10.0])
        assert np.allclose(ext, [0.0, 0.0, np.pi])

    def test_refuses_negative_gamma(self):
        with pytest.raises(WeightConditionViolatedError):
            euclidean_extended_angles([1.0, 1.0, 1.0], [-0.9, -0.9, 0.0])

    def test_continuity_across_boundary(self):
        # Path r(t) = (1, 1, t) with weights (0, 0, 10) crosses the
        # admissibility boundary at t* = sqrt(4.5).  Scan at step 1e-8 to
        # bracket the flip, bisect the bracket to machine precision, and
        # compare the one-sided values: a tiny jump certifies that the
        # constant extension continues the angles with the correct values.
        w = np.array([0.0, 0.0, 10.0])

        def angles_at(t):
            return euclidean_extended_angles(np.array([1.0, 1.0, t]), w)

        ts = 2.1213 + np.arange(0, 1e-4, 1e-8)
        radii = np.column_stack([np.ones_like(ts), np.ones_like(ts), ts])
        adm, _ = euclidean_admissible(radii, w)
        flip = int(np.nonzero(adm[:-1] != adm[1:])[0][0])
        lo, hi = ts[flip], ts[flip + 1]
        assert hi - lo == pytest.approx(1e-8, rel=1e-2)
        lo_side = adm[flip]
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            adm_mid, _ = euclidean_admissible(np.array([1.0, 1.0, mid]), w)
            if adm_mid == lo_side:
                lo = mid
            else:
                hi = mid
        jump = np.max(np.abs(angles_at(lo) - angles_at(hi)))
        assert jump < 1e-6
        assert np.allclose(angles_at(2.0), [0.0, 0.0, np.pi])


class TestJacobian:
    def test_tangent_unit_value(self):
        J = euclidean_angle_jacobian([1.0, 1.0, 1.0], [1.0, 1.0, 1.0])
        expected = 1.0 / (2.0 * np.sqrt(3.0))
        assert J[0, 1] == pytest.approx(expected, rel=1e-14)
        # centered finite differences in u as an independent check
        h = 1e-6
        th_p = euclidean_angles(euclidean_lengths(
            [1.0, np.exp(h), 1.0], [1.0] * 3))
        th_m = euclidean_angles(euclidean_lengths(
            [1.0, np.exp(-h), 1.0], [1.0] * 3))
        fd = (th_p[0] - th_m[0]) / (2 * h)
        assert J[0, 1] == pytest.approx(fd, rel=1e-6)

    def test_rows_sum_to_zero_and_symmetry(self, rng):
        w = sample_gamma_ok(rng, 400)
        r = np.exp(rng.uniform(-2, 2, size=(400, 3)))
        J = euclidean_angle_jacobian(r, w)
        assert np.max(np.abs(J - np.swapaxes(J, 1, 2))) == 0.0
        assert np.max(np.abs(J.sum(axis=2))) < 1e-10

    def test_eigenpattern(self, rng):
        w = sample_gamma_ok(rng, 400)
        r = np.exp(rng.uniform(-1.5, 1.5, size=(400, 3)))
        cert, scale = euclidean_certificate(r, w)
        keep = cert > 1e-2 * scale
        J = euclidean_angle_jacobian(r[keep], w[keep])
        evals, evecs = np.linalg.eigh(J)
        norms = np.abs(evals).max(axis=1)
        assert np.all(evals[:, 1] < 0)
        assert np.max(np.abs(evals[:, 2]) / norms) < 1e-12
        cosang = np.abs(evecs[:, :, 2].sum(axis=1)) / np.sqrt(3.0)
        assert np.max(np.arccos(np.clip(cosang, -1, 1))) < 1e-7

    def test_offdiagonals_nonnegative_in_zhou_range(self, rng):
        w = sample_gamma_ok(rng, 400, hi=1.0)
        r = np.exp(rng.uniform(-2, 2, size=(400, 3)))
        J = euclidean_angle_jacobian(r, w)
        off = np.stack([J[:, 0, 1], J[:, 0, 2], J[:, 1, 2]])
        assert off.min() >= -1e-12

    def test_zero_outside_admissible_set(self):
        J = euclidean_angle_jacobian([1.0, 1.0, 0.1], [0.0, 0.0, 10.0])
        assert np.all(J == 0.0)
