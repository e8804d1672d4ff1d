"""Closed triangulated surfaces with per-edge inversive distances, circle
packing metrics, and the log-radius coordinates used by the variational
machinery."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Sequence

import numpy as np

from ._numerics import inv_log_tanh_half, log_tanh_half
from .errors import (
    DuplicateFaceError,
    MissingWeightError,
    NonManifoldError,
    UDomainViolationError,
    WeightOutOfRangeError,
)

Edge = tuple[int, int]
Face = tuple[int, int, int]


class Geometry(str, Enum):
    """Background geometry in which each triangle is realized."""

    EUCLIDEAN = "euclidean"
    HYPERBOLIC = "hyperbolic"


def canonical_edge(i: int, j: int) -> Edge:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class FaceWeightTriple:
    """Inversive distances of one face, indexed opposite each vertex.

    ``I_i`` is the weight of the edge joining the *other* two vertices, and
    the gamma values are ``I_i + I_j*I_k`` with its cyclic relabelings.
    """

    I_i: float
    I_j: float
    I_k: float

    @property
    def gamma_ijk(self) -> float:
        return self.I_i + self.I_j * self.I_k

    @property
    def gamma_jik(self) -> float:
        return self.I_j + self.I_i * self.I_k

    @property
    def gamma_kij(self) -> float:
        return self.I_k + self.I_i * self.I_j

    def as_array(self) -> np.ndarray:
        return np.array([self.I_i, self.I_j, self.I_k], dtype=float)

    def gammas(self) -> np.ndarray:
        return np.array([self.gamma_ijk, self.gamma_jik, self.gamma_kij])


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class WeightedComplex:
    """A closed triangulated surface together with edge weights.

    Instances are immutable after construction and safe to share between
    concurrent readers; build them with :func:`build_complex`.
    """

    vertex_count: int
    faces: tuple[Face, ...]
    edges: tuple[Edge, ...]
    weights: Mapping[Edge, float]
    euler_char: int
    faces_array: np.ndarray = field(repr=False)      # (F, 3) int
    face_weights: np.ndarray = field(repr=False)     # (F, 3), column m opposite vertex m

    @property
    def face_count(self) -> int:
        return len(self.faces)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def weight(self, i: int, j: int) -> float:
        return self.weights[canonical_edge(i, j)]

    def face_weight_triple(self, face_index: int) -> FaceWeightTriple:
        w = self.face_weights[face_index]
        return FaceWeightTriple(float(w[0]), float(w[1]), float(w[2]))

    def vertex_degrees(self) -> np.ndarray:
        deg = np.zeros(self.vertex_count, dtype=int)
        np.add.at(deg, self.faces_array.ravel(), 1)
        return deg


@dataclass(frozen=True)
class PackingMetric:
    """Per-vertex circle radii in a fixed background geometry."""

    geometry: Geometry
    radii: np.ndarray

    def __post_init__(self):
        r = np.array(self.radii, dtype=float)
        if r.ndim != 1:
            raise ValueError("radii must be a flat vector")
        if not np.all(np.isfinite(r)) or np.any(r <= 0.0):
            raise ValueError("all radii must be finite and > 0")
        object.__setattr__(self, "radii", _frozen(r))
        object.__setattr__(self, "geometry", Geometry(self.geometry))

    @property
    def vertex_count(self) -> int:
        return len(self.radii)

    def scaled(self, factor: float) -> "PackingMetric":
        return PackingMetric(self.geometry, self.radii * factor)


def _vertex_links_connected(faces: Sequence[Face], vertex_count: int) -> None:
    """Check that the link of every vertex is a single cycle.

    The edge-in-two-faces condition already forces every link vertex to have
    degree two, so only connectivity needs verification.
    """
    link: list[dict[int, list[int]]] = [dict() for _ in range(vertex_count)]
    for (i, j, k) in faces:
        for v, a, b in ((i, j, k), (j, k, i), (k, i, j)):
            link[v].setdefault(a, []).append(b)
            link[v].setdefault(b, []).append(a)
    for v in range(vertex_count):
        nbrs = link[v]
        if not nbrs:
            raise NonManifoldError(f"vertex {v} lies in no face")
        start = next(iter(nbrs))
        seen = {start}
        stack = [start]
        while stack:
            cur = stack.pop()
            for nxt in nbrs[cur]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        if len(seen) != len(nbrs):
            raise NonManifoldError(f"the link of vertex {v} is not a single cycle")


def build_complex(faces: Sequence[Sequence[int]],
                  weights: Mapping[Edge, float]) -> WeightedComplex:
    """Validate a face list plus edge weights and derive the surface data.

    Raises :class:`NonManifoldError`, :class:`DuplicateFaceError`,
    :class:`MissingWeightError`, or :class:`WeightOutOfRangeError` on bad
    input.  Weight map keys may list either vertex first; extra keys that
    do not correspond to an edge are ignored.
    """
    if len(faces) == 0:
        raise NonManifoldError("face list is empty")

    norm_faces: list[Face] = []
    seen_triples: set[frozenset[int]] = set()
    for idx, f in enumerate(faces):
        tup = tuple(int(v) for v in f)
        if len(tup) != 3:
            raise NonManifoldError(f"face {idx} has {len(tup)} vertices, expected 3")
        if len(set(tup)) != 3:
            raise NonManifoldError(f"face {idx} repeats a vertex: {tup}")
        if min(tup) < 0:
            raise NonManifoldError(f"face {idx} has a negative vertex index")
        key = frozenset(tup)
        if key in seen_triples:
            raise DuplicateFaceError(f"face {tup} appears more than once")
        seen_triples.add(key)
        norm_faces.append(tup)  # keep the given orientation

    vertex_count = 1 + max(max(f) for f in norm_faces)

    edge_face_count: dict[Edge, int] = {}
    for f in norm_faces:
        for a, b in ((f[0], f[1]), (f[1], f[2]), (f[0], f[2])):
            e = canonical_edge(a, b)
            edge_face_count[e] = edge_face_count.get(e, 0) + 1
    bad = [e for e, n in edge_face_count.items() if n != 2]
    if bad:
        e, n = bad[0], edge_face_count[bad[0]]
        raise NonManifoldError(
            f"edge {e} lies in {n} face(s), expected exactly 2 "
            f"({len(bad)} offending edge(s) total)")

    _vertex_links_connected(norm_faces, vertex_count)

    edges = tuple(sorted(edge_face_count))
    wmap: dict[Edge, float] = {}
    canon_weights = {canonical_edge(*k): float(v) for k, v in weights.items()}
    for e in edges:
        if e not in canon_weights:
            raise MissingWeightError(f"edge {e} has no inversive distance")
        val = canon_weights[e]
        if not np.isfinite(val) or val <= -1.0:
            raise WeightOutOfRangeError(
                f"edge {e} has inversive distance {val}, must be > -1")
        wmap[e] = val

    n_e, n_f = len(edges), len(norm_faces)
    if 2 * n_e != 3 * n_f:
        raise NonManifoldError(f"2|E| = {2 * n_e} differs from 3|F| = {3 * n_f}")
    euler_char = vertex_count - n_e + n_f

    faces_array = _frozen(np.array(norm_faces, dtype=np.int64))
    face_w = np.empty((n_f, 3), dtype=float)
    for m, (i, j, k) in enumerate(norm_faces):
        face_w[m, 0] = wmap[canonical_edge(j, k)]
        face_w[m, 1] = wmap[canonical_edge(i, k)]
        face_w[m, 2] = wmap[canonical_edge(i, j)]

    return WeightedComplex(
        vertex_count=vertex_count,
        faces=tuple(norm_faces),
        edges=edges,
        weights=wmap,
        euler_char=euler_char,
        faces_array=faces_array,
        face_weights=_frozen(face_w),
    )


@dataclass(frozen=True)
class WeightConditionReport:
    """Per-face gamma triples with the nonnegativity verdict."""

    gammas: np.ndarray        # (F, 3)
    passed: np.ndarray        # (F,) bool

    @property
    def all_pass(self) -> bool:
        return bool(np.all(self.passed))

    @property
    def failing_faces(self) -> list[int]:
        return [int(i) for i in np.nonzero(~self.passed)[0]]

    def face_values(self, face_index: int) -> tuple[float, float, float]:
        g = self.gammas[face_index]
        return (float(g[0]), float(g[1]), float(g[2]))


def face_gammas(face_weights: np.ndarray) -> np.ndarray:
    """gamma[..., m] = I_m + I_j * I_k over the last axis of length 3."""
    w = np.asarray(face_weights, dtype=float)
    return w + np.roll(w, -1, axis=-1) * np.roll(w, -2, axis=-1)


def validate_weight_condition(c: WeightedComplex) -> WeightConditionReport:
    """Evaluate the per-face gamma nonnegativity condition.

    A face passes iff all three of its gamma values are >= 0.  The report is
    purely informational; nothing is raised for failing faces.
    """
    g = face_gammas(c.face_weights)
    return WeightConditionReport(gammas=g, passed=np.all(g >= 0.0, axis=1))


def to_u(metric: PackingMetric) -> np.ndarray:
    """Log-radius coordinates: ln r (Euclidean) or ln tanh(r/2) (hyperbolic)."""
    if metric.geometry is Geometry.EUCLIDEAN:
        return np.log(metric.radii)
    return log_tanh_half(metric.radii)


def from_u(geometry: Geometry, u: np.ndarray) -> PackingMetric:
    """Inverse of :func:`to_u`.

    Hyperbolic coordinates must be strictly negative; otherwise
    :class:`UDomainViolationError` is raised.
    """
    geometry = Geometry(geometry)
    u = np.asarray(u, dtype=float)
    if geometry is Geometry.EUCLIDEAN:
        return PackingMetric(geometry, np.exp(u))
    if np.any(u >= 0.0):
        bad = int(np.argmax(u >= 0.0))
        raise UDomainViolationError(
            f"hyperbolic u[{bad}] = {u[bad]} but tanh(r/2) < 1 forces u < 0")
    return PackingMetric(geometry, inv_log_tanh_half(u))
