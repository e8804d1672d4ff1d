"""The extended Ricci potential: per-face energies, the global convex
potential, and their gradients.

The potential is the line integral of a closed, continuous 1-form whose
coefficients are the constant-extended angles; its gradient at u is exactly
the (extended) curvature minus the prescribed target.  Values are computed
by adaptive quadrature along straight segments, with admissibility-boundary
crossings located by bisection first so the integrator only ever sees
endpoint kinks.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.integrate

from .curvature import curvature, global_jacobian, kernel
from .errors import (
    QuadratureFailureError,
    UDomainViolationError,
    WeightConditionViolatedError,
)
from .surface import (
    Geometry,
    PackingMetric,
    WeightedComplex,
    from_u,
    validate_weight_condition,
)

SCAN_POINTS = 65
BISECT_ITERS = 60


@dataclass(frozen=True)
class CurvatureTarget:
    """Prescribed curvature data: plain K-bar when alpha == 0, otherwise the
    pair (alpha, R-bar)."""

    values: np.ndarray
    alpha: float = 0.0

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.ndim != 1 or not np.all(np.isfinite(v)):
            raise ValueError("target values must be a finite vector")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "alpha", float(self.alpha))

    @property
    def kind(self) -> str:
        return "curvature" if self.alpha == 0.0 else "alpha"

    @classmethod
    def classical(cls, values) -> "CurvatureTarget":
        return cls(values=values, alpha=0.0)

    @classmethod
    def alpha_target(cls, alpha: float, values) -> "CurvatureTarget":
        return cls(values=values, alpha=alpha)


@dataclass(frozen=True)
class PotentialSpec:
    """Everything needed to evaluate the extended potential: the weighted
    surface, the geometry, the target, and the base point of the line
    integral (the zero of the potential)."""

    surface: WeightedComplex
    geometry: Geometry
    target: CurvatureTarget
    base_point: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "geometry", Geometry(self.geometry))
        u0 = np.array(self.base_point, dtype=float)
        u0.setflags(write=False)
        object.__setattr__(self, "base_point", u0)
        n = self.surface.vertex_count
        if len(u0) != n or len(self.target.values) != n:
            raise ValueError("base point / target length must match the vertex count")
        report = validate_weight_condition(self.surface)
        if not report.all_pass:
            raise WeightConditionViolatedError(
                f"faces {report.failing_faces} violate the gamma condition")
        if self.geometry is Geometry.HYPERBOLIC and np.any(u0 >= 0.0):
            raise UDomainViolationError("hyperbolic base point must have u < 0")


def _check_u(spec: PotentialSpec, u: np.ndarray) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    if len(u) != spec.surface.vertex_count:
        raise ValueError("u has the wrong length")
    if spec.geometry is Geometry.HYPERBOLIC and np.any(u >= 0.0):
        raise UDomainViolationError("hyperbolic u must be strictly negative")
    return u


def target_values(spec: PotentialSpec, u: np.ndarray) -> np.ndarray:
    """The prescribed angle-sum the gradient is measured against: K-bar for
    alpha == 0, else R-bar * s^alpha with s^alpha = exp(alpha * u)."""
    if spec.target.alpha == 0.0:
        return np.array(spec.target.values)
    return spec.target.values * np.exp(spec.target.alpha * np.asarray(u))


def potential_gradient(spec: PotentialSpec, u: np.ndarray) -> np.ndarray:
    """Gradient of the extended potential: extended curvature minus target."""
    u = _check_u(spec, u)
    metric = from_u(spec.geometry, u)
    k = curvature(spec.surface, metric, use_extension=True).values
    return k - target_values(spec, u)


def hessian(spec: PotentialSpec, u: np.ndarray) -> np.ndarray:
    """Dense Hessian: the global curvature Jacobian plus the diagonal term
    from the alpha part of the target."""
    u = _check_u(spec, u)
    lam = global_jacobian(spec.surface, from_u(spec.geometry, u)).dense()
    if spec.target.alpha != 0.0:
        lam = lam - np.diag(spec.target.alpha * target_values(spec, u))
    return lam


def _segment_crossings(admissible_at, n_faces: int,
                       scan_points: int = SCAN_POINTS) -> list[float]:
    """Admissibility-boundary crossing parameters of t -> mask in [0, 1].

    ``admissible_at(t)`` returns a boolean vector over faces.  Each sign
    change on the scan grid is sharpened by bisection.  Crossings between
    grid points that flip an even number of times are invisible to the scan;
    the scan resolution bounds what the quadrature must absorb.
    """
    grid = np.linspace(0.0, 1.0, scan_points)
    masks = np.stack([np.atleast_1d(admissible_at(t)) for t in grid])
    crossings: list[float] = []
    for f in range(n_faces):
        col = masks[:, f]
        for i in np.nonzero(col[:-1] != col[1:])[0]:
            lo, hi = grid[i], grid[i + 1]
            flo = col[i]
            for _ in range(BISECT_ITERS):
                mid = 0.5 * (lo + hi)
                if np.atleast_1d(admissible_at(mid))[f] == flo:
                    lo = mid
                else:
                    hi = mid
            crossings.append(0.5 * (lo + hi))
    return sorted(t for t in crossings if 0.0 < t < 1.0)


def _quad_segment(integrand, tol: float, points: list[float]) -> float:
    limit = max(200, 20 * (len(points) + 1))
    result = scipy.integrate.quad(
        integrand, 0.0, 1.0,
        points=points if points else None,
        limit=limit, epsabs=tol, epsrel=1e-11, full_output=1)
    value, abserr = result[0], result[1]
    if len(result) > 3 and abserr > max(tol, 1e-8 * abs(value)):
        raise QuadratureFailureError(
            f"quadrature tolerance not met: {result[3]} (abserr {abserr:.3e})")
    return float(value)


def face_extended_energy(weights, u_face, u0_face, geometry) -> float:
    """Line integral of the extended-angle 1-form of one face along the
    straight segment from ``u0_face`` to ``u_face``.

    Concave along any segment; linear wherever the face stays outside its
    admissible set (the integrand is constant there).
    """
    geometry = Geometry(geometry)
    ker = kernel(geometry)
    u0 = np.asarray(u0_face, dtype=float)
    u1 = np.asarray(u_face, dtype=float)
    w = np.asarray(weights, dtype=float) * np.ones(3)
    delta = u1 - u0
    if not np.any(delta):
        return 0.0

    def radii_at(t):
        return from_u(geometry, u0 + t * delta).radii

    def admissible_at(t):
        adm, _ = ker.admissible(radii_at(t), w)
        return np.atleast_1d(adm)

    def integrand(t):
        return float(ker.extended_angles(radii_at(t), w) @ delta)

    tol = 1e-10 * (1.0 + float(np.linalg.norm(delta)))
    points = _segment_crossings(admissible_at, 1)
    return _quad_segment(integrand, tol, points)


def energy_difference(spec: PotentialSpec, u_from: np.ndarray,
                      u_to: np.ndarray) -> float:
    """Potential difference along the straight segment u_from -> u_to.

    Because the 1-form is closed and continuous this equals
    potential_value(u_to) - potential_value(u_from) for any base point.
    """
    u_from = _check_u(spec, u_from)
    u_to = _check_u(spec, u_to)
    delta = u_to - u_from
    if not np.any(delta):
        return 0.0
    c = spec.surface
    ker = kernel(spec.geometry)

    def admissible_at(t):
        metric = from_u(spec.geometry, u_from + t * delta)
        adm, _ = ker.admissible(metric.radii[c.faces_array], c.face_weights)
        return np.asarray(adm)

    def integrand(t):
        return float(potential_gradient(spec, u_from + t * delta) @ delta)

    tol = 1e-10 * (1.0 + float(np.linalg.norm(delta)))
    points = _segment_crossings(admissible_at, c.face_count)
    return _quad_segment(integrand, tol, points)


def potential_value(spec: PotentialSpec, u: np.ndarray) -> float:
    """Extended potential at u, normalized so the base point maps to zero.

    Computed as the line integral of the gradient along the straight
    segment from the base point, with boundary crossings pre-located.
    """
    return energy_difference(spec, spec.base_point, u)
