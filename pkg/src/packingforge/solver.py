"""Prescribed-curvature solving: damped Newton on the extended potential,
with a first-order flow integrator as a fallback method.

The Newton Hessian is the assembled curvature Jacobian (plus the diagonal
alpha term), regularized by a relative Tikhonov shift.  In the Euclidean
classical case the scaling gauge is handled by projecting directions and
iterates onto the zero-mean hyperplane; the hyperbolic domain boundary
u = 0 is guarded by step truncation.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional

import numpy as np
import scipy.linalg

from .curvature import TWO_PI, curvature, kernel
from .errors import (
    LeftDomainError,
    LinearSolveFailureError,
    LineSearchStalledError,
)
from .potential import (
    CurvatureTarget,
    PotentialSpec,
    energy_difference,
    hessian,
    potential_gradient,
)
from .surface import Geometry, PackingMetric, WeightedComplex, from_u, to_u

U_BOUND = -1e-12          # open hyperbolic domain guard
BOUNDARY_SHRINK = 0.9     # fraction of the distance to the guard a step may take
GB_REL_TOL = 1e-8         # Gauss-Bonnet consistency tolerance for refusal
U_FLOAT_RANGE = 400.0     # |u| beyond which exp/atanh leave double range


class SolveMethod(str, Enum):
    NEWTON = "newton"
    FLOW = "flow"


class GaugeMode(str, Enum):
    SUM_U_ZERO = "sum_u_zero"
    NONE = "none"


class SolveStatus(str, Enum):
    CONVERGED = "converged"
    MAX_ITERS = "max_iters"
    LEFT_DOMAIN = "left_domain"
    REFUSED = "refused"


@dataclass(frozen=True)
class SolveConfig:
    method: SolveMethod = SolveMethod.NEWTON
    grad_tol: float = 1e-10
    max_iters: Optional[int] = None          # 200 for Newton, 10**6 for flow
    armijo_slope: float = 1e-4
    backtrack_factor: float = 0.5
    tikhonov: float = 1e-12
    flow_step: float = 1e-2
    gauge: Optional[GaugeMode] = None        # auto-selected when None
    stall_step: float = 1e-16

    def resolved_max_iters(self) -> int:
        if self.max_iters is not None:
            return int(self.max_iters)
        return 200 if SolveMethod(self.method) is SolveMethod.NEWTON else 10 ** 6


@dataclass(frozen=True)
class StepReport:
    step_length: float
    backtracks: int
    gradient_direction: bool
    slope: float


@dataclass(frozen=True)
class SolveOutcome:
    status: SolveStatus
    metric: PackingMetric
    residual_history: np.ndarray
    extended_faces_at_end: tuple[int, ...]
    gauge: GaugeMode
    iterations: int
    message: str = ""

    @property
    def converged(self) -> bool:
        return self.status is SolveStatus.CONVERGED


def resolve_gauge(geometry: Geometry, target: CurvatureTarget) -> GaugeMode:
    """Scaling gauge: active exactly for Euclidean classical-curvature
    targets, where angles are invariant under uniform radius scaling."""
    if Geometry(geometry) is Geometry.EUCLIDEAN and target.alpha == 0.0:
        return GaugeMode.SUM_U_ZERO
    return GaugeMode.NONE


def _project(v: np.ndarray) -> np.ndarray:
    return v - v.mean()


def _extended_faces(spec: PotentialSpec, u: np.ndarray) -> tuple[int, ...]:
    c = spec.surface
    metric = from_u(spec.geometry, u)
    adm, _ = kernel(spec.geometry).admissible(metric.radii[c.faces_array],
                                              c.face_weights)
    return tuple(int(i) for i in np.nonzero(~np.asarray(adm))[0])


def _boundary_cap(u: np.ndarray, d: np.ndarray) -> float:
    """Largest multiple of d keeping u + t*d below the hyperbolic guard,
    already shrunk to 90% of the distance to the boundary."""
    rising = d > 0.0
    if not np.any(rising):
        return np.inf
    return BOUNDARY_SHRINK * float(np.min((U_BOUND - u[rising]) / d[rising]))


def _range_cap(u: np.ndarray, d: np.ndarray) -> float:
    """Largest multiple of d keeping |u + t*d| inside the float-safe box;
    trial points beyond it would underflow or overflow the radii."""
    moving = d != 0.0
    if not np.any(moving):
        return np.inf
    limit = np.where(d[moving] > 0, U_FLOAT_RANGE, -U_FLOAT_RANGE)
    caps = (limit - u[moving]) / d[moving]
    return float(np.min(np.maximum(caps, 0.0)))


def _line_search(spec: PotentialSpec, u, d, slope, cfg: SolveConfig,
                 alpha0: float) -> tuple[float, int]:
    alpha = alpha0
    backtracks = 0
    while True:
        decrease = energy_difference(spec, u, u + alpha * d)
        if decrease <= cfg.armijo_slope * alpha * slope:
            return alpha, backtracks
        alpha *= cfg.backtrack_factor
        backtracks += 1
        if alpha < cfg.stall_step:
            raise LineSearchStalledError(
                f"backtracking stalled below {cfg.stall_step}")


def newton_step(spec: PotentialSpec, u: np.ndarray,
                cfg: SolveConfig) -> tuple[np.ndarray, StepReport]:
    """One damped Newton step on the extended potential.

    Solves the Tikhonov-shifted system, projects out the gauge direction
    when active, backtracks on the potential with the Armijo rule, and
    falls back to the gradient direction if the Newton direction stalls
    (the extension is C^1 but not C^2, so Newton is only locally trusted).
    """
    u = np.asarray(u, dtype=float)
    gauge = cfg.gauge if cfg.gauge is not None else resolve_gauge(
        spec.geometry, spec.target)
    gauged = gauge is GaugeMode.SUM_U_ZERO
    g = potential_gradient(spec, u)
    rhs = -g
    if gauged:
        rhs = _project(rhs)
    if not np.any(rhs):
        return u.copy(), StepReport(0.0, 0, False, 0.0)

    n = len(u)
    h = hessian(spec, u)
    tau = max(cfg.tikhonov * float(np.trace(h)) / n, 0.0)
    m = h + tau * np.eye(n)
    if gauged:
        # Lift the exact kernel direction so the system is well conditioned;
        # the projected solution is unchanged.
        sigma = max(float(np.trace(h)) / n, 1.0)
        m = m + (sigma / n) * np.ones((n, n))
    try:
        d = scipy.linalg.solve(m, rhs, assume_a="sym")
    except (scipy.linalg.LinAlgError, ValueError) as exc:
        raise LinearSolveFailureError(str(exc)) from exc
    if not np.all(np.isfinite(d)):
        raise LinearSolveFailureError("Newton system produced non-finite direction")
    if gauged:
        d = _project(d)

    def attempt(direction, is_gradient):
        slope = float(g @ direction)
        if slope >= 0.0:
            raise LineSearchStalledError("direction is not a descent direction")
        alpha0 = min(1.0, _range_cap(u, direction))
        if spec.geometry is Geometry.HYPERBOLIC:
            alpha0 = min(alpha0, _boundary_cap(u, direction))
        alpha, backtracks = _line_search(spec, u, direction, slope, cfg, alpha0)
        u_next = u + alpha * direction
        if gauged:
            u_next = _project(u_next)
        return u_next, StepReport(alpha, backtracks, is_gradient, slope)

    try:
        return attempt(d, False)
    except LineSearchStalledError:
        fallback = _project(-g) if gauged else -g
        if not np.any(fallback):
            return u.copy(), StepReport(0.0, 0, True, 0.0)
        return attempt(fallback, True)


def flow_step(spec: PotentialSpec, u: np.ndarray, cfg: SolveConfig) -> np.ndarray:
    """One explicit Euler step of du/dt = -(extended curvature - target)."""
    u = np.asarray(u, dtype=float)
    gauge = cfg.gauge if cfg.gauge is not None else resolve_gauge(
        spec.geometry, spec.target)
    u_next = u - cfg.flow_step * potential_gradient(spec, u)
    if gauge is GaugeMode.SUM_U_ZERO:
        u_next = _project(u_next)
    if spec.geometry is Geometry.HYPERBOLIC and np.any(u_next >= U_BOUND):
        raise LeftDomainError("flow step reached the u = 0 boundary")
    return u_next


def gauss_bonnet_gap(c: WeightedComplex, target: CurvatureTarget) -> float:
    """Sum of a classical target minus 2*pi*chi (zero iff consistent)."""
    return float(target.values.sum() - TWO_PI * c.euler_char)


def solve(c: WeightedComplex, target: CurvatureTarget, initial: PackingMetric,
          cfg: Optional[SolveConfig] = None) -> SolveOutcome:
    """Find a packing metric whose (alpha-)curvature matches the target.

    Refuses Euclidean classical targets that violate Gauss-Bonnet.  On
    convergence the returned residual satisfies the tolerance and every face
    is admissible; Euclidean classical solutions are normalized to zero-mean
    u.  Non-convergence is reported as a status, never as an assertion about
    existence.
    """
    cfg = cfg or SolveConfig()
    spec = PotentialSpec(surface=c, geometry=initial.geometry, target=target,
                         base_point=to_u(initial))
    gauge = cfg.gauge if cfg.gauge is not None else resolve_gauge(
        initial.geometry, target)
    cfg = replace(cfg, gauge=gauge)

    if gauge is GaugeMode.SUM_U_ZERO:
        gap = gauss_bonnet_gap(c, target)
        if abs(gap) > GB_REL_TOL * (1.0 + abs(TWO_PI * c.euler_char)):
            return SolveOutcome(
                status=SolveStatus.REFUSED,
                metric=initial,
                residual_history=np.zeros(0),
                extended_faces_at_end=_extended_faces(spec, spec.base_point),
                gauge=gauge,
                iterations=0,
                message=f"target curvature sum differs from 2*pi*chi by {gap:.3e}")

    u = np.array(spec.base_point)
    if gauge is GaugeMode.SUM_U_ZERO:
        u = _project(u)
    history: list[float] = []
    newton = SolveMethod(cfg.method) is SolveMethod.NEWTON
    max_iters = cfg.resolved_max_iters()
    status = SolveStatus.MAX_ITERS
    message = ""
    iterations = 0

    for iterations in range(max_iters + 1):
        if np.max(np.abs(u)) > U_FLOAT_RANGE:
            message = ("iterates left the numerically representable radius "
                       "range; the target may be outside the curvature image")
            break
        g = potential_gradient(spec, u)
        res = float(np.max(np.abs(g)))
        history.append(res)
        extended = _extended_faces(spec, u)
        if res <= cfg.grad_tol and not extended:
            status = SolveStatus.CONVERGED
            break
        if iterations == max_iters:
            break
        try:
            if newton:
                u, report = newton_step(spec, u, cfg)
                if report.step_length == 0.0 and res > cfg.grad_tol:
                    status = SolveStatus.MAX_ITERS
                    message = "solver stalled at a non-critical point"
                    break
            else:
                u = flow_step(spec, u, cfg)
        except (LineSearchStalledError, LinearSolveFailureError) as exc:
            message = str(exc)
            break
        except LeftDomainError as exc:
            status = SolveStatus.LEFT_DOMAIN
            message = str(exc)
            break

    metric = from_u(spec.geometry, u)
    return SolveOutcome(
        status=status,
        metric=metric,
        residual_history=np.array(history),
        extended_faces_at_end=_extended_faces(spec, u),
        gauge=gauge,
        iterations=iterations,
        message=message,
    )
