import json

import numpy as np
import pytest

from packingforge.audit import (
    audit_global,
    audit_global_rigidity,
    audit_jacobian_lemmas,
    audit_triangle_lemmas,
    run_audit,
    sample_weight_triples,
)
from packingforge.fixtures import fixture_complex
from packingforge.runtime import chunk_ranges, thread_cap
from packingforge.surface import Geometry, face_gammas


class TestSampling:
    def test_strata_are_covered_and_gamma_holds(self, rng):
        w = sample_weight_triples(rng, 5000)
        assert np.all(face_gammas(w) >= 0)
        assert np.any(w < 0)
        assert np.any((w >= 0) & (w <= 1))
        assert np.any(w > 1)
        assert np.all(w > -1)

    def test_chunking_independent_of_thread_cap(self):
        assert chunk_ranges(10000, 4096) == [(0, 4096), (4096, 8192),
                                             (8192, 10000)]
        assert thread_cap() >= 1


class TestDeterminism:
    def test_same_seed_same_report(self):
        a = audit_triangle_lemmas(Geometry.HYPERBOLIC, 5000, seed=11)
        b = audit_triangle_lemmas(Geometry.HYPERBOLIC, 5000, seed=11)
        assert json.dumps(a.to_dict()) == json.dumps(b.to_dict())

    def test_thread_cap_does_not_change_results(self, monkeypatch):
        monkeypatch.setenv("PACKING_FORGE_THREADS", "1")
        a = audit_jacobian_lemmas(Geometry.EUCLIDEAN, 3000, seed=3)
        monkeypatch.setenv("PACKING_FORGE_THREADS", "7")
        b = audit_jacobian_lemmas(Geometry.EUCLIDEAN, 3000, seed=3)
        assert json.dumps(a.to_dict()) == json.dumps(b.to_dict())


class TestSuites:
    @pytest.mark.parametrize("geometry", list(Geometry))
    def test_triangle_suite_passes(self, geometry):
        rep = audit_triangle_lemmas(geometry, 20000, seed=5)
        assert rep.all_pass

    @pytest.mark.parametrize("geometry", list(Geometry))
    def test_jacobian_suite_passes(self, geometry):
        rep = audit_jacobian_lemmas(geometry, 4000, seed=5)
        assert rep.all_pass
        names = [c.name for c in rep.checks]
        assert any("informational" in n for n in names)

    def test_global_suite_on_fixture(self, torus):
        for geometry in Geometry:
            rep = audit_global(torus, geometry, n_samples=20, seed=5,
                               fixture="torus")
            assert rep.all_pass, [c.name for c in rep.checks if not c.passed]

    def test_rigidity_alpha_sign_hypotheses(self, rng):
        from packingforge.surface import PackingMetric
        c = fixture_complex("genus2", 1.0)
        base = PackingMetric(Geometry.EUCLIDEAN, np.ones(c.vertex_count))
        rep = audit_global_rigidity(c, Geometry.EUCLIDEAN, alpha=1.0,
                                    n_restarts=3, seed=2, base_metric=base)
        assert rep.all_pass
        info = rep.checks[0].info
        assert info["sign_condition_holds"]
        assert info["gauge"] == "none"

    def test_rigidity_failure_surfaces_as_failed_check(self):
        # a target nowhere near the curvature image cannot be recovered
        c = fixture_complex("tetrahedron", 1.0)
        from packingforge.curvature import curvature
        from packingforge.potential import CurvatureTarget
        from packingforge.solver import SolveConfig, solve
        from packingforge.surface import PackingMetric
        out = solve(c, CurvatureTarget(np.array([-2 * np.pi, 2 * np.pi,
                                                 2 * np.pi, 2 * np.pi])),
                    PackingMetric(Geometry.EUCLIDEAN, np.ones(4)),
                    SolveConfig(max_iters=25))
        assert not out.converged

    def test_run_audit_driver(self):
        reports = run_audit("triangle", n_samples=2000, seed=1)
        assert {r.geometry for r in reports} == {"euclidean", "hyperbolic"}
        with pytest.raises(ValueError):
            run_audit("bogus")

    def test_report_serialization_shape(self):
        rep = audit_triangle_lemmas(Geometry.EUCLIDEAN, 1000, seed=9)
        d = rep.to_dict()
        assert d["suite"] == "triangle"
        assert d["seed"] == 9
        assert isinstance(d["checks"], list)
        assert {"name", "samples", "worst_residual", "tolerance", "passed",
                "info"} <= set(d["checks"][0])
