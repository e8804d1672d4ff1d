"""Euclidean per-triangle kernel: edge lengths, admissibility, inner angles,
constant-extended angles, and the analytic 3x3 angle Jacobian in log-radius
coordinates.

All functions accept a single triple (shape ``(3,)``) or a batch
(``(..., 3)``); weights may be given as a :class:`FaceWeightTriple` or an
array in the same opposite-vertex order.
"""

from __future__ import annotations

import numpy as np

from .errors import DegenerateTriangleError, WeightConditionViolatedError
from .surface import FaceWeightTriple, face_gammas

CERT_REL_TOL = 1e-14
COS_CLAMP_TOL = 1e-12


def _triple(x) -> np.ndarray:
    if isinstance(x, FaceWeightTriple):
        x = x.as_array()
    a = np.asarray(x, dtype=float)
    if a.shape[-1:] != (3,):
        raise ValueError("expected a triple or a batch of triples")
    return a


def _pair(r, w) -> tuple[np.ndarray, np.ndarray]:
    r, w = _triple(r), _triple(w)
    return np.broadcast_arrays(r, w * np.ones_like(r))


def euclidean_lengths(r, w) -> np.ndarray:
    """l_m = sqrt(r_j^2 + r_k^2 + 2 r_j r_k I_m) with (j, k) opposite m."""
    r, w = _pair(r, w)
    rj = np.roll(r, -1, axis=-1)
    rk = np.roll(r, -2, axis=-1)
    return np.sqrt(rj * rj + rk * rk + 2.0 * rj * rk * w)


def euclidean_certificate(r, w) -> tuple[np.ndarray, np.ndarray]:
    """Quadratic admissibility certificate and its magnitude scale.

    The certificate is the Heron-form polynomial whose positivity is
    equivalent to the strict triangle inequalities; the scale is the sum of
    the absolute values of its monomials, used for boundary classification.
    """
    r, w = _pair(r, w)
    g = face_gammas(w)
    ri, rj, rk = r[..., 0], r[..., 1], r[..., 2]
    Ii, Ij, Ik = w[..., 0], w[..., 1], w[..., 2]
    terms = np.stack([
        ri * ri * rj * rj * (1.0 - Ik * Ik),
        ri * ri * rk * rk * (1.0 - Ij * Ij),
        rj * rj * rk * rk * (1.0 - Ii * Ii),
        2.0 * ri * ri * rj * rk * g[..., 0],
        2.0 * ri * rj * rj * rk * g[..., 1],
        2.0 * ri * rj * rk * rk * g[..., 2],
    ], axis=-1)
    return terms.sum(axis=-1), np.abs(terms).sum(axis=-1)


def euclidean_admissible(r, w) -> tuple[np.ndarray | bool, np.ndarray | float]:
    """Certificate-based admissibility test.

    Returns ``(admissible, certificate)``.  Points whose certificate sits
    within ``1e-14`` of zero relative to the term scale are classified as
    non-admissible, matching the openness of the admissible set.
    """
    cert, scale = euclidean_certificate(r, w)
    adm = cert > CERT_REL_TOL * scale
    if cert.ndim == 0:
        return bool(adm), float(cert)
    return adm, cert


def _angles_from_lengths(l: np.ndarray) -> np.ndarray:
    lj = np.roll(l, -1, axis=-1)
    lk = np.roll(l, -2, axis=-1)
    cos = (lj * lj + lk * lk - l * l) / (2.0 * lj * lk)
    over = np.abs(cos) - 1.0
    if np.any(over > COS_CLAMP_TOL):
        raise DegenerateTriangleError(
            "cosine argument exceeds [-1, 1] beyond the rounding allowance")
    return np.arccos(np.clip(cos, -1.0, 1.0))


def euclidean_angles(lengths) -> np.ndarray:
    """Inner angles from the cosine law; angle m is opposite length m.

    Raises :class:`DegenerateTriangleError` unless the strict triangle
    inequalities hold.
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
    """Constant extension values: pi opposite the (unique) violated
    inequality, zero elsewhere."""
    deficit = l - np.roll(l, -1, axis=-1) - np.roll(l, -2, axis=-1)
    # Under gamma >= 0 at most one inequality can fail at any radius vector.
    assert np.all((deficit >= 0.0).sum(axis=-1) <= 1)
    worst = np.argmax(deficit, axis=-1)
    out = np.zeros_like(l)
    np.put_along_axis(out, worst[..., None], np.pi, axis=-1)
    return out


def _angles_total(l: np.ndarray, admissible: np.ndarray) -> np.ndarray:
    """Angles on admissible rows, constant-extension values elsewhere.

    Never raises; callers guarantee the admissible mask matches ``l``.
    """
    flat_l = l.reshape(-1, 3)
    flat_adm = np.asarray(admissible).reshape(-1)
    out = np.empty_like(flat_l)
    if np.any(flat_adm):
        out[flat_adm] = _angles_from_lengths(flat_l[flat_adm])
    if np.any(~flat_adm):
        out[~flat_adm] = _degenerate_assignment(flat_l[~flat_adm])
    return out.reshape(l.shape)


def _require_gammas(w: np.ndarray) -> np.ndarray:
    g = face_gammas(w)
    if np.any(g < 0.0):
        raise WeightConditionViolatedError(
            "a gamma value is negative; the constant extension is undefined")
    return g


def euclidean_extended_angles(r, w) -> np.ndarray:
    """Angles extended by constants outside the admissible set.

    Requires every gamma of the triple to be nonnegative, which is what
    makes the non-admissible region decompose into components with a single
    violated inequality each.
    """
    r, w = _pair(r, w)
    _require_gammas(w)
    adm, _ = euclidean_admissible(r, w)
    return _angles_total(euclidean_lengths(r, w), np.asarray(adm))


def euclidean_angle_jacobian(r, w) -> np.ndarray:
    """d(angles)/d(u) with u = ln r, as a ``(..., 3, 3)`` array.

    Analytic off-diagonal entries; diagonals close each row to zero sum,
    which is exact because the angle sum is constant.  Outside the
    admissible set the angles are locally constant and the matrix is zero.
    """
    r, w = _pair(r, w)
    flat_r = r.reshape(-1, 3)
    flat_w = w.reshape(-1, 3)
    adm, _ = euclidean_admissible(flat_r, flat_w)
    adm = np.asarray(adm).reshape(-1)
    J = np.zeros((len(flat_r), 3, 3))
    if np.any(adm):
        J[adm] = _jacobian_admissible(flat_r[adm], flat_w[adm])
    return J.reshape(r.shape + (3,))


def _jacobian_admissible(r: np.ndarray, w: np.ndarray) -> np.ndarray:
    g = face_gammas(w)
    l = euclidean_lengths(r, w)
    theta = _angles_from_lengths(l)
    area2 = l[:, 1] * l[:, 2] * np.sin(theta[:, 0])
    J = np.zeros((len(r), 3, 3))
    for a, b in ((0, 1), (0, 2), (1, 2)):
        c = 3 - a - b
        ra, rb, rc = r[:, a], r[:, b], r[:, c]
        num = (ra * ra * rb * rb * (1.0 - w[:, c] ** 2)
               + ra * ra * rb * rc * g[:, a]
               + ra * rb * rb * rc * g[:, b])
        val = num / (area2 * l[:, c] ** 2)
        J[:, a, b] = val
        J[:, b, a] = val
    for m in range(3):
        J[:, m, m] = -(J[:, m, (m + 1) % 3] + J[:, m, (m + 2) % 3])
    return J


# Geometry-neutral aliases used by the assembly layer.
lengths = euclidean_lengths
admissible = euclidean_admissible
angles = euclidean_angles
extended_angles = euclidean_extended_angles
angle_jacobian = euclidean_angle_jacobian
