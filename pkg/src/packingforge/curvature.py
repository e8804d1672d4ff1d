"""Vertex curvatures and the global curvature Jacobian, assembled from the
per-face kernels for either background geometry."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.sparse as sp

from . import euclidean as eu
from . import hyperbolic as hy
from .errors import InadmissibleFaceError, WeightConditionViolatedError
from .surface import (
    Geometry,
    PackingMetric,
    WeightedComplex,
    validate_weight_condition,
)

TWO_PI = 2.0 * np.pi


def kernel(geometry: Geometry):
    """The per-triangle module (euclidean or hyperbolic) for a geometry."""
    return eu if Geometry(geometry) is Geometry.EUCLIDEAN else hy


def s_values(metric: PackingMetric) -> np.ndarray:
    """Normalization radii: r (Euclidean) or tanh(r/2) (hyperbolic)."""
    if metric.geometry is Geometry.EUCLIDEAN:
        return np.array(metric.radii)
    return np.tanh(metric.radii / 2.0)


@dataclass(frozen=True)
class CurvatureVector:
    """Per-vertex angle deficits 2*pi - (incident angle sum)."""

    values: np.ndarray
    geometry: Geometry
    extended_flag: bool


@dataclass(frozen=True)
class AlphaCurvatureVector:
    """Curvature normalized by s_i^alpha."""

    alpha: float
    values: np.ndarray
    s: np.ndarray


@dataclass(frozen=True)
class GlobalJacobian:
    """Sparse symmetric N x N matrix d(curvature)/d(u)."""

    matrix: sp.csr_matrix
    geometry: Geometry

    def dense(self, max_vertices: int = 2000) -> np.ndarray:
        n = self.matrix.shape[0]
        if n > max_vertices:
            raise ValueError(
                f"refusing to densify a {n}-vertex Jacobian (cap {max_vertices})")
        return self.matrix.toarray()


@dataclass(frozen=True)
class TriangleReport:
    """Per-face geometry snapshot for inspection and the CLI."""

    index: int
    vertices: tuple[int, int, int]
    lengths: np.ndarray
    admissible: bool
    certificate: float
    angles: np.ndarray
    jacobian: np.ndarray
    area: Optional[float]


def face_radii(c: WeightedComplex, m: PackingMetric) -> np.ndarray:
    if m.vertex_count != c.vertex_count:
        raise ValueError("metric and complex vertex counts differ")
    return m.radii[c.faces_array]


def face_angles(c: WeightedComplex, m: PackingMetric,
                use_extension: bool = False) -> np.ndarray:
    """(F, 3) matrix of inner angles, one row per face.

    Without extension every face must be admissible; with extension every
    face must satisfy the gamma condition.
    """
    ker = kernel(m.geometry)
    r = face_radii(c, m)
    w = c.face_weights
    if use_extension:
        report = validate_weight_condition(c)
        if not report.all_pass:
            raise WeightConditionViolatedError(
                f"faces {report.failing_faces} violate the gamma condition")
        return ker.extended_angles(r, w)
    adm, _ = ker.admissible(r, w)
    if not np.all(adm):
        bad = [int(i) for i in np.nonzero(~np.asarray(adm))[0][:8]]
        raise InadmissibleFaceError(
            f"faces {bad} are outside the admissible set (extension disabled)")
    return ker.angles(ker.lengths(r, w))


def curvature(c: WeightedComplex, m: PackingMetric,
              use_extension: bool = False) -> CurvatureVector:
    """K_i = 2*pi minus the sum of (possibly extended) angles at vertex i."""
    angles = face_angles(c, m, use_extension)
    k = np.full(c.vertex_count, TWO_PI)
    np.subtract.at(k, c.faces_array.ravel(), angles.ravel())
    extended = False
    if use_extension:
        adm, _ = kernel(m.geometry).admissible(face_radii(c, m), c.face_weights)
        extended = bool(np.any(~np.asarray(adm)))
    return CurvatureVector(values=k, geometry=m.geometry, extended_flag=extended)


def alpha_curvature(c: WeightedComplex, m: PackingMetric, alpha: float,
                    use_extension: bool = False) -> AlphaCurvatureVector:
    """R_i = K_i / s_i^alpha."""
    k = curvature(c, m, use_extension).values
    s = s_values(m)
    return AlphaCurvatureVector(alpha=float(alpha), values=k / s ** alpha, s=s)


def face_areas(c: WeightedComplex, m: PackingMetric,
               use_extension: bool = False) -> np.ndarray:
    """Hyperbolic per-face areas pi - (angle sum); zero on extended faces."""
    if m.geometry is not Geometry.HYPERBOLIC:
        raise ValueError("face areas are defined for hyperbolic metrics only")
    return np.pi - face_angles(c, m, use_extension).sum(axis=1)


def global_jacobian(c: WeightedComplex, m: PackingMetric) -> GlobalJacobian:
    """Assemble d(K)/d(u) = -(sum of per-face Jacobians scattered to global
    indices).

    Faces outside the admissible set contribute zero blocks, matching the
    local constancy of the extended angles.  Accumulation happens in face
    order for reproducibility.
    """
    jac = kernel(m.geometry).angle_jacobian(face_radii(c, m), c.face_weights)
    rows = np.repeat(c.faces_array, 3, axis=1).ravel()
    cols = np.tile(c.faces_array, (1, 3)).ravel()
    n = c.vertex_count
    mat = sp.coo_matrix((-jac.ravel(), (rows, cols)), shape=(n, n)).tocsr()
    return GlobalJacobian(matrix=mat, geometry=m.geometry)


def face_reports(c: WeightedComplex, m: PackingMetric) -> list[TriangleReport]:
    """Per-face diagnostic reports.

    Angles are the extended values where the gamma condition holds; on a
    face that fails it, plain angles are reported when the face is
    admissible and NaN otherwise (no extension is defined there).
    """
    ker = kernel(m.geometry)
    r = face_radii(c, m)
    w = c.face_weights
    lengths = ker.lengths(r, w)
    adm, cert = ker.admissible(r, w)
    adm = np.asarray(adm)
    angles = ker._angles_total(lengths, adm)
    gamma_ok = validate_weight_condition(c).passed
    angles[~gamma_ok & ~adm] = np.nan
    jac = ker.angle_jacobian(r, w)
    hyperbolic = m.geometry is Geometry.HYPERBOLIC
    out = []
    for f in range(c.face_count):
        out.append(TriangleReport(
            index=f,
            vertices=c.faces[f],
            lengths=lengths[f],
            admissible=bool(adm[f]),
            certificate=float(cert[f]),
            angles=angles[f],
            jacobian=jac[f],
            area=float(np.pi - angles[f].sum()) if hyperbolic else None,
        ))
    return out
