import mpmath as mp
import numpy as np
import pytest

from packingforge.curvature import (
    TWO_PI,
    alpha_curvature,
    curvature,
    face_areas,
    face_reports,
    global_jacobian,
)
from packingforge.errors import InadmissibleFaceError, WeightConditionViolatedError
from packingforge.fixtures import fixture_complex
from packingforge.surface import (
    Geometry,
    PackingMetric,
    build_complex,
    from_u,
    to_u,
    validate_weight_condition,
)

mp.mp.dps = 40

TET_FACES = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]


def unit_metric(c, geometry):
    return PackingMetric(geometry, np.ones(c.vertex_count))


class TestCurvature:
    def test_tetrahedron_tangent_unit(self, tet):
        k = curvature(c=tet, m=unit_metric(tet, Geometry.EUCLIDEAN))
        assert np.max(np.abs(k.values - np.pi)) < 1e-12
        assert abs(k.values.sum() - TWO_PI * tet.euler_char) < 1e-12
        assert not k.extended_flag

    def test_scaling_invariance(self, tet):
        k1 = curvature(tet, unit_metric(tet, Geometry.EUCLIDEAN))
        k10 = curvature(tet, PackingMetric(Geometry.EUCLIDEAN, 10 * np.ones(4)))
        assert np.max(np.abs(k1.values - k10.values)) < 1e-12

    def test_octahedron_hyperbolic_defect(self, octa):
        m = unit_metric(octa, Geometry.HYPERBOLIC)
        k = curvature(octa, m)
        theta_eq = float(mp.acos(mp.cosh(2) / (mp.cosh(2) + 1)))
        expected_defect = 8 * (np.pi - 3 * theta_eq)
        defect = k.values.sum() - TWO_PI * octa.euler_char
        assert defect == pytest.approx(expected_defect, abs=1e-12)
        assert defect == pytest.approx(face_areas(octa, m).sum(), abs=1e-12)

    def test_inadmissible_face_raises_without_extension(self):
        c = fixture_complex("tetrahedron", 10.0)
        m = PackingMetric(Geometry.EUCLIDEAN, np.array([1.0, 1.0, 1.0, 0.01]))
        with pytest.raises(InadmissibleFaceError):
            curvature(c, m, use_extension=False)
        k = curvature(c, m, use_extension=True)
        assert k.extended_flag
        assert abs(k.values.sum() - TWO_PI * c.euler_char) < 1e-12

    def test_extension_requires_gamma(self):
        weights = {e: 1.0 for e in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]}
        weights[(1, 2)] = -0.9
        weights[(0, 2)] = -0.9
        weights[(0, 1)] = 0.0
        c = build_complex(TET_FACES, weights)
        m = PackingMetric(Geometry.EUCLIDEAN, np.array([1.0, 1.0, 0.9, 1.0]))
        with pytest.raises(WeightConditionViolatedError):
            curvature(c, m, use_extension=True)

    @pytest.mark.parametrize("geometry", list(Geometry))
    def test_gauss_bonnet_random_metrics(self, torus, geometry, rng):
        for _ in range(25):
            radii = np.exp(rng.uniform(-0.7, 0.7, size=torus.vertex_count))
            m = PackingMetric(geometry, radii)
            k = curvature(torus, m, use_extension=True)
            defect = k.values.sum() - TWO_PI * torus.euler_char
            if geometry is Geometry.EUCLIDEAN:
                assert abs(defect) < 1e-10
            else:
                assert abs(defect - face_areas(torus, m, True).sum()) < 1e-9


class TestAlphaCurvature:
    def test_alpha_zero_is_classical(self, tet, rng):
        m = PackingMetric(Geometry.EUCLIDEAN, np.exp(rng.uniform(-1, 1, 4)))
        k = curvature(tet, m)
        a = alpha_curvature(tet, m, 0.0)
        assert np.array_equal(a.values, k.values)

    def test_unit_radius_any_alpha(self, tet):
        a = alpha_curvature(tet, unit_metric(tet, Geometry.EUCLIDEAN), 2.0)
        assert np.allclose(a.values, np.pi)
        assert np.allclose(a.s, 1.0)

    def test_division_by_s_alpha(self, tet):
        m = PackingMetric(Geometry.EUCLIDEAN, np.full(4, 2.0))
        a = alpha_curvature(tet, m, 1.0)
        assert np.allclose(a.values, np.pi / 2)

    def test_hyperbolic_s_is_tanh_half(self, octa):
        m = unit_metric(octa, Geometry.HYPERBOLIC)
        a = alpha_curvature(octa, m, 1.0)
        assert np.allclose(a.s, np.tanh(0.5))

    @pytest.mark.parametrize("geometry", list(Geometry))
    def test_reconstruction(self, genus2, geometry, rng):
        m = PackingMetric(geometry, np.exp(rng.uniform(-0.5, 0.5,
                                                       genus2.vertex_count)))
        for alpha in (-1.5, 0.0, 1.0, 3.0):
            a = alpha_curvature(genus2, m, alpha)
            k = curvature(genus2, m)
            assert np.max(np.abs(a.values * a.s ** alpha - k.values)) < 1e-12


class TestGlobalJacobian:
    def test_tetrahedron_spectrum(self, tet):
        lam = global_jacobian(tet, unit_metric(tet, Geometry.EUCLIDEAN)).dense()
        evals, evecs = np.linalg.eigh(lam)
        norm2 = np.abs(evals).max()
        assert np.count_nonzero(np.abs(evals) < 1e-9 * norm2) == 1
        assert np.all(evals[1:] > 0)
        kernel = evecs[:, 0]
        assert abs(abs(kernel.sum()) / 2.0 - 1.0) < 1e-9
        assert np.max(np.abs(lam @ np.ones(4))) < 1e-9

    def test_hyperbolic_positive_definite(self, octa):
        lam = global_jacobian(octa, unit_metric(octa, Geometry.HYPERBOLIC)).dense()
        assert np.linalg.eigvalsh(lam)[0] > 0

    def test_symmetry_and_sparsity(self, torus):
        m = PackingMetric(Geometry.EUCLIDEAN, np.ones(torus.vertex_count))
        gj = global_jacobian(torus, m)
        dense = gj.dense()
        assert np.max(np.abs(dense - dense.T)) == 0.0
        # K7 has every pair adjacent, so the pattern is full
        assert gj.matrix.nnz == torus.vertex_count ** 2

    @pytest.mark.parametrize("geometry", list(Geometry))
    def test_matches_finite_differences(self, octa, geometry, rng):
        radii = np.exp(rng.uniform(-0.4, 0.4, octa.vertex_count))
        m = PackingMetric(geometry, radii)
        lam = global_jacobian(octa, m).dense()
        u = to_u(m)
        h = 1e-6
        fd = np.empty_like(lam)
        for b in range(octa.vertex_count):
            up, um = u.copy(), u.copy()
            up[b] += h
            um[b] -= h
            fd[:, b] = (curvature(octa, from_u(geometry, up)).values
                        - curvature(octa, from_u(geometry, um)).values) / (2 * h)
        assert np.abs(lam - fd).max() / np.abs(lam).max() < 1e-5

    def test_zero_blocks_for_extended_faces(self):
        c = fixture_complex("tetrahedron", 10.0)
        m = PackingMetric(Geometry.EUCLIDEAN, np.array([1.0, 1.0, 1.0, 0.01]))
        lam = global_jacobian(c, m).dense()
        reports = face_reports(c, m)
        bad = [rep for rep in reports if not rep.admissible]
        assert bad, "fixture should have at least one extended face"
        assert np.all(np.isfinite(lam))

    def test_dense_cap(self, tet):
        gj = global_jacobian(tet, unit_metric(tet, Geometry.EUCLIDEAN))
        with pytest.raises(ValueError):
            gj.dense(max_vertices=2)


class TestFaceReports:
    def test_admissible_reports(self, tet):
        reports = face_reports(tet, unit_metric(tet, Geometry.EUCLIDEAN))
        assert len(reports) == tet.face_count
        for rep in reports:
            assert rep.admissible
            assert rep.area is None
            assert np.allclose(rep.angles, np.pi / 3)
            assert np.allclose(rep.lengths, 2.0)
            assert rep.jacobian.shape == (3, 3)

    def test_hyperbolic_reports_carry_area(self, octa):
        reports = face_reports(octa, unit_metric(octa, Geometry.HYPERBOLIC))
        for rep in reports:
            assert rep.area == pytest.approx(np.pi - rep.angles.sum())
            assert rep.area > 0

    def test_gamma_violating_inadmissible_face_reports_nan(self):
        weights = {e: 1.0 for e in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]}
        weights[(1, 2)] = -0.9
        weights[(0, 2)] = -0.9
        weights[(0, 1)] = 0.0
        c = build_complex(TET_FACES, weights)
        report = validate_weight_condition(c)
        assert report.failing_faces == [0]
        m = PackingMetric(Geometry.EUCLIDEAN, np.array([1.0, 1.0, 0.9, 1.0]))
        reps = face_reports(c, m)
        assert not reps[0].admissible
        assert np.all(np.isnan(reps[0].angles))
