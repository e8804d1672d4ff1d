"""Hyperbolic per-triangle kernel: edge lengths, admissibility, the uniform
large-radius bound, inner angles, constant-extended angles, and the angle
Jacobian in u = ln tanh(r/2) coordinates.

Same calling conventions as the Euclidean kernel: triples of shape ``(3,)``
or batches ``(..., 3)``; weights as arrays or :class:`FaceWeightTriple`.
Lengths and admissibility are evaluated in log space where needed and stay
finite for radii far beyond the overflow range of sinh/cosh.
"""

from __future__ import annotations

import numpy as np

from ._numerics import LN2, arccosh1p, inv_log_tanh_half, log_tanh_half, logsinh
from .errors import DegenerateTriangleError, WeightConditionViolatedError
from .euclidean import CERT_REL_TOL, _pair, _triple
from .surface import FaceWeightTriple, face_gammas

FD_STEP = 1e-6


def hyperbolic_lengths(r, w) -> np.ndarray:
    """cosh l_m = cosh r_j cosh r_k + I_m sinh r_j sinh r_k, opposite m.

    Computed as arccosh(1 + y) with y = 2 sinh^2((r_j - r_k)/2)
    + (1 + I_m) sinh r_j sinh r_k, which is positive without cancellation;
    overflowing samples switch to an equivalent log-space form.
    """
    r, w = _pair(r, w)
    rj = np.roll(r, -1, axis=-1)
    rk = np.roll(r, -2, axis=-1)
    d = np.abs(rj - rk)
    with np.errstate(over="ignore"):
        y = 2.0 * np.sinh(d / 2.0) ** 2 + (1.0 + w) * np.sinh(rj) * np.sinh(rk)
    finite = np.isfinite(y)
    if np.all(finite):
        return arccosh1p(y)
    ln_y = np.logaddexp(LN2 + 2.0 * logsinh(d / 2.0),
                        np.log1p(w) + logsinh(rj) + logsinh(rk))
    return np.where(finite, arccosh1p(np.where(finite, y, 1.0)), LN2 + ln_y)


def hyperbolic_certificate(r, w) -> tuple[np.ndarray, np.ndarray]:
    """Admissibility certificate, scaled by the positive factor
    (sinh r_i sinh r_j sinh r_k)^-2 so that it stays finite for large radii.

    The sign is unchanged by the scaling, so positivity is still equivalent
    to the strict triangle inequalities.  Also returns the magnitude scale.
    """
    r, w = _pair(r, w)
    g = face_gammas(w)
    with np.errstate(over="ignore", divide="ignore"):
        S2 = np.sinh(r) ** 2
        coth = 1.0 / np.tanh(r)
        Ii, Ij, Ik = w[..., 0], w[..., 1], w[..., 2]
        inv = np.where(np.isfinite(S2), (1.0 - w * w) / S2, 0.0)
        cj = np.roll(coth, -1, axis=-1)
        ck = np.roll(coth, -2, axis=-1)
        terms = np.concatenate([
            (2.0 * (1.0 + Ii * Ij * Ik))[..., None],
            inv,
            2.0 * g * cj * ck,
        ], axis=-1)
    return terms.sum(axis=-1), np.abs(terms).sum(axis=-1)


def hyperbolic_admissible(r, w) -> tuple[np.ndarray | bool, np.ndarray | float]:
    """Certificate-based admissibility; returns ``(admissible, certificate)``.

    Boundary values within ``1e-14`` of zero relative to the term scale are
    classified as non-admissible, as in the Euclidean kernel.
    """
    cert, scale = hyperbolic_certificate(r, w)
    adm = cert > CERT_REL_TOL * scale
    if cert.ndim == 0:
        return bool(adm), float(cert)
    return adm, cert


def uniform_radius_bound(w) -> np.ndarray | float:
    """Radius s* such that the equal-radius vector (s, s, s) is admissible
    for every s > s*.

    Requires all gammas nonnegative.  The bound is
    arcsinh(sqrt(max(0, (I_i^2+I_j^2+I_k^2-3) / (2(1+I_i)(1+I_j)(1+I_k)))));
    it is zero whenever the numerator is nonpositive.
    """
    w = _triple(w)
    if np.any(face_gammas(w) < 0.0):
        raise WeightConditionViolatedError(
            "uniform radius bound requires nonnegative gammas")
    num = (w * w).sum(axis=-1) - 3.0
    den = 2.0 * np.prod(1.0 + w, axis=-1)
    s = np.arcsinh(np.sqrt(np.maximum(0.0, num / den)))
    return float(s) if s.ndim == 0 else s


def _angles_from_lengths(l: np.ndarray) -> np.ndarray:
    """Half-angle form of the cosine law, evaluated in log space.

    Equals arccos((cosh l_j cosh l_k - cosh l_m)/(sinh l_j sinh l_k)) but has
    no cancellation for tiny triangles and no overflow for huge ones.
    """
    s = l.sum(axis=-1, keepdims=True) / 2.0
    ls = logsinh(np.maximum(s - l, 0.0))
    half = 0.5 * (np.roll(ls, -1, axis=-1) + np.roll(ls, -2, axis=-1)
                  - logsinh(s) - ls)
    return 2.0 * np.arctan(np.exp(half))


def hyperbolic_angles(lengths) -> np.ndarray:
    """Inner angles from the hyperbolic cosine law; angle m opposite l_m.

    Raises :class:`DegenerateTriangleError` unless the strict triangle
    inequalities hold.  The angle sum is strictly below pi; the defect is
    the triangle area.
    """
    l = _triple(lengths)
    slack = np.roll(l, -1, axis=-1) + np.roll(l, -2, axis=-1) - l
    bad = ~np.all(slack > 0.0, axis=-1)
    if np.any(bad):
        n_bad = int(np.count_nonzero(np.atleast_1d(bad)))
        raise DegenerateTriangleError(
            f"triangle inequality fails for {n_bad} triangle(s)")
    return _angles_from_lengths(l)


def _degenerate_assignment(l: np.ndarray) -> np.ndarray:
    deficit = l - np.roll(l, -1, axis=-1) - np.roll(l, -2, axis=-1)
    assert np.all((deficit >= 0.0).sum(axis=-1) <= 1)
    worst = np.argmax(deficit, axis=-1)
    out = np.zeros_like(l)
    np.put_along_axis(out, worst[..., None], np.pi, axis=-1)
    return out


def _angles_total(l: np.ndarray, admissible: np.ndarray) -> np.ndarray:
    flat_l = l.reshape(-1, 3)
    flat_adm = np.asarray(admissible).reshape(-1)
    out = np.empty_like(flat_l)
    if np.any(flat_adm):
        out[flat_adm] = _angles_from_lengths(flat_l[flat_adm])
    if np.any(~flat_adm):
        out[~flat_adm] = _degenerate_assignment(flat_l[~flat_adm])
    return out.reshape(l.shape)


def hyperbolic_extended_angles(r, w) -> np.ndarray:
    """Angles extended by constants outside the admissible set; requires all
    gammas nonnegative."""
    r, w = _pair(r, w)
    if np.any(face_gammas(w) < 0.0):
        raise WeightConditionViolatedError(
            "a gamma value is negative; the constant extension is undefined")
    adm, _ = hyperbolic_admissible(r, w)
    return _angles_total(hyperbolic_lengths(r, w), np.asarray(adm))


def triangle_area(angles) -> np.ndarray | float:
    """Hyperbolic triangle area pi - (angle sum); zero on extended faces."""
    a = np.pi - _triple(angles).sum(axis=-1)
    return float(a) if a.ndim == 0 else a


def hyperbolic_angle_jacobian(r, w) -> np.ndarray:
    """d(angles)/d(u) with u = ln tanh(r/2), shape ``(..., 3, 3)``.

    Off-diagonal entries are analytic and filled symmetrically; diagonal
    entries use Richardson-refined centered differences in u (there is no
    closed diagonal formula to mirror).  Zero outside the admissible set.
    Assumes the evaluation point is interior enough that a stencil of width
    2e-6 in u stays admissible.
    """
    r, w = _pair(r, w)
    flat_r = r.reshape(-1, 3)
    flat_w = w.reshape(-1, 3)
    adm, _ = hyperbolic_admissible(flat_r, flat_w)
    adm = np.asarray(adm).reshape(-1)
    J = np.zeros((len(flat_r), 3, 3))
    if np.any(adm):
        J[adm] = _jacobian_admissible(flat_r[adm], flat_w[adm])
    return J.reshape(r.shape + (3,))


def _jacobian_admissible(r: np.ndarray, w: np.ndarray) -> np.ndarray:
    g = face_gammas(w)
    C = np.cosh(r)
    S = np.sinh(r)
    l = hyperbolic_lengths(r, w)
    theta = _angles_from_lengths(l)
    sl = np.sinh(l)
    area_fac = sl[:, 1] * sl[:, 2] * np.sin(theta[:, 0])
    J = np.zeros((len(r), 3, 3))
    for a, b in ((0, 1), (0, 2), (1, 2)):
        c = 3 - a - b
        num = (C[:, c] * S[:, a] ** 2 * S[:, b] ** 2 * (1.0 - w[:, c] ** 2)
               + C[:, a] * S[:, a] * S[:, b] ** 2 * S[:, c] * g[:, b]
               + C[:, b] * S[:, a] ** 2 * S[:, b] * S[:, c] * g[:, a])
        val = num / (area_fac * sl[:, c] ** 2)
        J[:, a, b] = val
        J[:, b, a] = val
    u = log_tanh_half(r)
    for m in range(3):
        J[:, m, m] = _fd_diagonal(u, w, m)
    return J


def _theta_component(u: np.ndarray, w: np.ndarray, m: int) -> np.ndarray:
    radii = inv_log_tanh_half(u)
    l = hyperbolic_lengths(radii, w)
    adm, _ = hyperbolic_admissible(radii, w)
    return _angles_total(l, np.asarray(adm))[:, m]


def _fd_diagonal(u: np.ndarray, w: np.ndarray, m: int,
                 h: float = FD_STEP) -> np.ndarray:
    def central(step):
        up = u.copy()
        um = u.copy()
        up[:, m] += step
        um[:, m] -= step
        return (_theta_component(up, w, m) - _theta_component(um, w, m)) / (2.0 * step)

    return (4.0 * central(h / 2.0) - central(h)) / 3.0


# Geometry-neutral aliases used by the assembly layer.
lengths = hyperbolic_lengths
admissible = hyperbolic_admissible
angles = hyperbolic_angles
extended_angles = hyperbolic_extended_angles
angle_jacobian = hyperbolic_angle_jacobian
