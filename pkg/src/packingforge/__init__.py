"""Inversive distance circle packing metrics on closed triangulated
surfaces: per-triangle geometry in Euclidean and hyperbolic backgrounds,
curvature maps and their Jacobians, a convex-potential solver for
prescribed (alpha-)curvature, and randomized rigidity audits."""

from . import errors
from .audit import (
    AuditReport,
    CheckResult,
    audit_global,
    audit_global_rigidity,
    audit_jacobian_lemmas,
    audit_triangle_lemmas,
    run_audit,
)
from .curvature import (
    AlphaCurvatureVector,
    CurvatureVector,
    GlobalJacobian,
    TriangleReport,
    alpha_curvature,
    curvature,
    face_areas,
    face_reports,
    global_jacobian,
)
from .documents import (
    PackingDocument,
    ResultDocument,
    load_document,
    save_document,
    save_result,
)
from .euclidean import (
    euclidean_admissible,
    euclidean_angle_jacobian,
    euclidean_angles,
    euclidean_extended_angles,
    euclidean_lengths,
)
from .fixtures import fixture_complex
from .hyperbolic import (
    hyperbolic_admissible,
    hyperbolic_angle_jacobian,
    hyperbolic_angles,
    hyperbolic_extended_angles,
    hyperbolic_lengths,
    uniform_radius_bound,
)
from .potential import (
    CurvatureTarget,
    PotentialSpec,
    energy_difference,
    face_extended_energy,
    potential_gradient,
    potential_value,
)
from .solver import (
    GaugeMode,
    SolveConfig,
    SolveMethod,
    SolveOutcome,
    SolveStatus,
    flow_step,
    newton_step,
    solve,
)
from .surface import (
    FaceWeightTriple,
    Geometry,
    PackingMetric,
    WeightedComplex,
    build_complex,
    from_u,
    to_u,
    validate_weight_condition,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
