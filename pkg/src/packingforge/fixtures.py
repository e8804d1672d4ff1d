"""Built-in triangulations and weight patterns used by audits, demos, and
tests: tetrahedron and octahedron (chi = 2), a 7-vertex torus (chi = 0),
and a genus-2 surface obtained as a connected sum of two tori (chi = -2)."""

from __future__ import annotations

import numpy as np

from .surface import (
    Edge,
    Face,
    WeightedComplex,
    build_complex,
    canonical_edge,
    face_gammas,
    validate_weight_condition,
)


def tetrahedron_faces() -> list[Face]:
    return [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]


def octahedron_faces() -> list[Face]:
    equator = [1, 2, 3, 4]
    faces = []
    for a, b in zip(equator, equator[1:] + equator[:1]):
        faces.append((0, a, b))
        faces.append((5, b, a))
    return faces


def torus_faces() -> list[Face]:
    """Minimal 7-vertex triangulation of the torus (the complete graph K7)."""
    faces = []
    for i in range(7):
        faces.append((i, (i + 1) % 7, (i + 3) % 7))
        faces.append((i, (i + 2) % 7, (i + 3) % 7))
    return faces


def genus2_faces() -> list[Face]:
    """Connected sum of two 7-vertex tori along one removed triangle.

    One face is deleted from each torus and the boundary triangles are
    identified, giving 11 vertices, 39 edges, 26 faces, chi = -2.
    """
    glue_a = (0, 1, 3)
    part_a = [f for f in torus_faces() if set(f) != set(glue_a)]

    relabel = {7: 0, 8: 1, 10: 3}
    nxt = 7
    for v in range(7, 14):
        if v not in relabel:
            relabel[v] = nxt
            nxt += 1
    part_b = []
    for f in torus_faces():
        shifted = tuple(v + 7 for v in f)
        if set(shifted) == {7, 8, 10}:
            continue
        part_b.append(tuple(relabel[v] for v in shifted))
    return part_a + part_b


FIXTURE_FACES = {
    "tetrahedron": tetrahedron_faces,
    "octahedron": octahedron_faces,
    "torus": torus_faces,
    "genus2": genus2_faces,
}


def _edges_of(faces: list[Face]) -> list[Edge]:
    edges = set()
    for (i, j, k) in faces:
        edges.update([canonical_edge(i, j), canonical_edge(j, k), canonical_edge(i, k)])
    return sorted(edges)


def constant_weights(faces: list[Face], value: float = 1.0) -> dict[Edge, float]:
    return {e: float(value) for e in _edges_of(faces)}


def mixed_weights(faces: list[Face], negative: float = -0.4,
                  positive: float = 0.9) -> dict[Edge, float]:
    """Weights exercising the obtuse regime: a greedy set of edges that
    share no face gets the negative value, everything else the positive one.

    With one negative edge per face the gamma condition holds whenever
    negative + positive^2 >= 0.
    """
    if negative + positive * positive < 0:
        raise ValueError("pattern would violate the gamma condition")
    weights = constant_weights(faces, positive)
    touched: set[frozenset[int]] = set()
    for e in sorted(weights):
        owners = [frozenset(f) for f in faces if e[0] in f and e[1] in f]
        if any(o in touched for o in owners):
            continue
        weights[e] = float(negative)
        touched.update(owners)
    return weights


def randomized_weights(faces: list[Face], rng: np.random.Generator,
                       strata=((-0.9, 0.0), (0.0, 1.0), (1.0, 10.0)),
                       sweeps: int = 2) -> dict[Edge, float]:
    """Per-edge weights drawn from stratified ranges, accepted edge by edge
    only when every incident face keeps all gammas nonnegative.

    Starts from the all-tangent pattern, so the result always satisfies the
    face condition regardless of how many proposals are rejected.
    """
    edges = _edges_of(faces)
    weights = {e: 1.0 for e in edges}
    by_edge = {e: [f for f in faces if e[0] in f and e[1] in f] for e in edges}

    def face_ok(f):
        (i, j, k) = f
        w = np.array([weights[canonical_edge(j, k)],
                      weights[canonical_edge(i, k)],
                      weights[canonical_edge(i, j)]])
        return np.all(face_gammas(w) >= 0.0)

    for _ in range(sweeps):
        for e in edges:
            lo, hi = strata[rng.integers(len(strata))]
            proposal = float(rng.uniform(lo, hi))
            old = weights[e]
            weights[e] = proposal
            if not all(face_ok(f) for f in by_edge[e]):
                weights[e] = old
    return weights


def fixture_complex(name: str, weights: str | float = 1.0,
                    seed: int = 0) -> WeightedComplex:
    """Build a named fixture with a weight pattern.

    ``weights`` may be a constant, ``"mixed"`` for the deterministic
    negative-edge pattern, or ``"random"`` for stratified random weights.
    """
    try:
        faces = FIXTURE_FACES[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; "
                       f"choose from {sorted(FIXTURE_FACES)}") from None
    if weights == "mixed":
        wmap = mixed_weights(faces)
    elif weights == "random":
        wmap = randomized_weights(faces, np.random.default_rng(seed))
    else:
        wmap = constant_weights(faces, float(weights))
    c = build_complex(faces, wmap)
    assert validate_weight_condition(c).all_pass
    return c
