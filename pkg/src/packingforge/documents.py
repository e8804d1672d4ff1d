"""The JSON document formats: PackingDocument (input surfaces, weights,
radii, targets) and ResultDocument (solver/audit output).

Floats pass through Python's shortest round-trip representation, so a saved
document reloads to bit-identical values; result serialization is
deterministic, giving byte-identical files for identical inputs and seeds.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from .errors import (
    PackingForgeError,
    ParseError,
    SchemaError,
    ValidationError,
)
from .potential import CurvatureTarget
from .surface import (
    Edge,
    Face,
    Geometry,
    PackingMetric,
    WeightedComplex,
    build_complex,
)

SCHEMA_VERSION = "1"


@dataclass(frozen=True, eq=False)
class PackingDocument:
    """Validated content of an input file."""

    geometry: Geometry
    vertices: int
    faces: tuple[Face, ...]
    inversive_distances: tuple[tuple[Edge, float], ...]
    radii: Optional[np.ndarray] = None
    target: Optional[CurvatureTarget] = None
    schema_version: str = SCHEMA_VERSION

    def __eq__(self, other) -> bool:
        if not isinstance(other, PackingDocument):
            return NotImplemented
        return self.canonical_bytes() == other.canonical_bytes()

    def __hash__(self):
        return hash(self.canonical_bytes())

    def weight_map(self) -> dict[Edge, float]:
        return {e: v for e, v in self.inversive_distances}

    def to_complex(self) -> WeightedComplex:
        return build_complex(self.faces, self.weight_map())

    def metric(self) -> Optional[PackingMetric]:
        if self.radii is None:
            return None
        return PackingMetric(self.geometry, self.radii)

    def to_dict(self) -> dict:
        doc: dict[str, Any] = {
            "schema_version": self.schema_version,
            "geometry": self.geometry.value,
            "vertices": self.vertices,
            "faces": [list(f) for f in self.faces],
            "inversive_distances": [
                {"edge": list(e), "value": v} for e, v in self.inversive_distances],
        }
        if self.radii is not None:
            doc["radii"] = [float(x) for x in self.radii]
        if self.target is not None:
            block: dict[str, Any] = {"kind": self.target.kind,
                                     "values": [float(x) for x in self.target.values]}
            if self.target.kind == "alpha":
                block["alpha"] = self.target.alpha
            doc["target"] = block
        return doc

    def canonical_bytes(self) -> bytes:
        return json.dumps(self.to_dict(), sort_keys=True,
                          separators=(",", ":")).encode()

    def sha256(self) -> str:
        return hashlib.sha256(self.canonical_bytes()).hexdigest()


def _expect(cond: bool, path: str, msg: str) -> None:
    if not cond:
        raise SchemaError(f"{path}: {msg}")


def _number(value, path: str) -> float:
    _expect(isinstance(value, (int, float)) and not isinstance(value, bool),
            path, f"expected a number, got {type(value).__name__}")
    _expect(np.isfinite(value), path, f"expected a finite number, got {value!r}")
    return float(value)


def _int(value, path: str) -> int:
    _expect(isinstance(value, int) and not isinstance(value, bool),
            path, f"expected an integer, got {type(value).__name__}")
    return int(value)


def _number_list(value, path: str) -> list[float]:
    _expect(isinstance(value, list), path, "expected an array")
    return [_number(v, f"{path}[{i}]") for i, v in enumerate(value)]


def document_from_dict(raw: Any) -> PackingDocument:
    """Schema- and semantics-check a parsed JSON object.

    Structural problems raise :class:`SchemaError` with the offending path;
    semantic ones (weight range, manifoldness, lengths of arrays) raise
    :class:`ValidationError`.
    """
    _expect(isinstance(raw, dict), "$", "document must be an object")
    unknown = set(raw) - {"schema_version", "geometry", "vertices", "faces",
                          "inversive_distances", "radii", "target"}
    _expect(not unknown, "$", f"unknown keys {sorted(unknown)}")
    for key in ("schema_version", "geometry", "vertices", "faces",
                "inversive_distances"):
        _expect(key in raw, "$", f"missing required key {key!r}")

    version = raw["schema_version"]
    _expect(version == SCHEMA_VERSION, "$.schema_version",
            f"unsupported version {version!r}")
    geom_raw = raw["geometry"]
    _expect(geom_raw in (g.value for g in Geometry), "$.geometry",
            f"expected 'euclidean' or 'hyperbolic', got {geom_raw!r}")
    geometry = Geometry(geom_raw)
    n = _int(raw["vertices"], "$.vertices")
    _expect(n > 0, "$.vertices", "vertex count must be positive")

    _expect(isinstance(raw["faces"], list) and raw["faces"], "$.faces",
            "expected a non-empty array")
    faces: list[Face] = []
    for i, f in enumerate(raw["faces"]):
        path = f"$.faces[{i}]"
        _expect(isinstance(f, list), path, "expected an array of 3 indices")
        _expect(len(f) == 3, path, f"expected 3 vertex indices, got {len(f)}")
        tri = tuple(_int(v, f"{path}[{j}]") for j, v in enumerate(f))
        if not all(0 <= v < n for v in tri):
            raise ValidationError(f"{path}: vertex index out of range [0, {n})")
        faces.append(tri)

    _expect(isinstance(raw["inversive_distances"], list), "$.inversive_distances",
            "expected an array")
    pairs: list[tuple[Edge, float]] = []
    seen: set[Edge] = set()
    for i, entry in enumerate(raw["inversive_distances"]):
        path = f"$.inversive_distances[{i}]"
        _expect(isinstance(entry, dict), path, "expected an object")
        _expect(set(entry) == {"edge", "value"}, path,
                "expected exactly the keys 'edge' and 'value'")
        e = entry["edge"]
        _expect(isinstance(e, list) and len(e) == 2, f"{path}.edge",
                "expected a pair of vertex indices")
        a, b = (_int(v, f"{path}.edge[{j}]") for j, v in enumerate(e))
        value = _number(entry["value"], f"{path}.value")
        if not (0 <= a < b < n):
            raise ValidationError(
                f"{path}.edge: expected canonical (min, max) order within "
                f"[0, {n}), got [{a}, {b}]")
        if (a, b) in seen:
            raise ValidationError(f"{path}.edge: edge [{a}, {b}] listed twice")
        seen.add((a, b))
        if value <= -1.0:
            raise ValidationError(
                f"{path}.value: inversive distance {value} on edge [{a}, {b}] "
                "must be > -1")
        pairs.append(((a, b), value))

    radii = None
    if "radii" in raw:
        vals = _number_list(raw["radii"], "$.radii")
        if len(vals) != n:
            raise ValidationError(
                f"$.radii: expected {n} radii, got {len(vals)}")
        if any(v <= 0 or not np.isfinite(v) for v in vals):
            raise ValidationError("$.radii: radii must be finite and positive")
        radii = np.array(vals)

    target = None
    if "target" in raw:
        t = raw["target"]
        _expect(isinstance(t, dict), "$.target", "expected an object")
        _expect("kind" in t, "$.target", "missing 'kind'")
        kind = t["kind"]
        _expect(kind in ("curvature", "alpha"), "$.target.kind",
                f"expected 'curvature' or 'alpha', got {kind!r}")
        allowed = {"kind", "values"} | ({"alpha"} if kind == "alpha" else set())
        _expect(set(t) <= allowed, "$.target",
                f"unknown keys {sorted(set(t) - allowed)}")
        _expect("values" in t, "$.target", "missing 'values'")
        values = _number_list(t["values"], "$.target.values")
        if len(values) != n:
            raise ValidationError(
                f"$.target.values: expected {n} values, got {len(values)}")
        alpha = 0.0
        if kind == "alpha":
            _expect("alpha" in t, "$.target", "alpha targets need an 'alpha' key")
            alpha = _number(t["alpha"], "$.target.alpha")
        target = CurvatureTarget(values=np.array(values), alpha=alpha)

    doc = PackingDocument(geometry=geometry, vertices=n, faces=tuple(faces),
                          inversive_distances=tuple(pairs), radii=radii,
                          target=target, schema_version=version)
    # Anything the complex builder rejects, the loader rejects too.
    try:
        c = doc.to_complex()
    except PackingForgeError as exc:
        raise ValidationError(str(exc)) from exc
    if c.vertex_count != n:
        raise ValidationError(
            f"$.vertices: {n} declared but faces reference {c.vertex_count}")
    missing = set(c.edges) - {e for e, _ in pairs}
    if missing:
        raise ValidationError(
            f"$.inversive_distances: missing weights for edges "
            f"{sorted(missing)[:8]}")
    extra = {e for e, _ in pairs} - set(c.edges)
    if extra:
        raise ValidationError(
            f"$.inversive_distances: entries for non-edges {sorted(extra)[:8]}")
    return doc


def load_document(path: str) -> PackingDocument:
    """Parse and validate a packing document file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: "
            f"{exc.msg}") from exc
    return document_from_dict(raw)


def save_document(path: str, doc: PackingDocument) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc.to_dict(), fh, indent=2)
        fh.write("\n")


@dataclass(frozen=True)
class ResultDocument:
    """Solver/analysis output echoing a hash of the input it came from."""

    input_sha256: str
    geometry: Geometry
    radii: np.ndarray
    u: np.ndarray
    curvatures: np.ndarray
    alpha_block: Optional[dict] = None
    solver: Optional[dict] = None
    audit: Optional[list] = None
    schema_version: str = SCHEMA_VERSION

    def to_dict(self) -> dict:
        doc: dict[str, Any] = {
            "schema_version": self.schema_version,
            "input_sha256": self.input_sha256,
            "geometry": self.geometry.value,
            "radii": [float(x) for x in self.radii],
            "u": [float(x) for x in self.u],
            "curvatures": [float(x) for x in self.curvatures],
        }
        if self.alpha_block is not None:
            doc["alpha"] = self.alpha_block
        if self.solver is not None:
            doc["solver"] = self.solver
        if self.audit is not None:
            doc["audit"] = self.audit
        return doc


def save_result(path: str, result: ResultDocument) -> None:
    """Serialize a result deterministically (stable key order, shortest
    round-trip floats)."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(result.to_dict(), fh, indent=2)
        fh.write("\n")
