"""Command-line interface: validate, angles, curvature, jacobian, solve,
flow, audit, import-obj.

Exit codes: 0 success, 1 validation/parse failure, 2 solver
non-convergence, 3 audit failure.  All diagnostics go to stderr; pass
``--json`` for machine-readable output (which always echoes the seed when
randomness is involved).  The environment variable PACKING_FORGE_THREADS
caps concurrent batch evaluation in the audit suites.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

import numpy as np

from .audit import run_audit
from .curvature import (
    TWO_PI,
    alpha_curvature,
    curvature,
    face_areas,
    face_reports,
    global_jacobian,
    s_values,
)
from .documents import (
    PackingDocument,
    ResultDocument,
    load_document,
    save_document,
    save_result,
)
from .errors import DocumentError, PackingForgeError
from .fixtures import FIXTURE_FACES
from .potential import CurvatureTarget
from .solver import SolveConfig, SolveMethod, SolveStatus, solve
from .surface import (
    Geometry,
    PackingMetric,
    WeightedComplex,
    canonical_edge,
    to_u,
    validate_weight_condition,
)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NO_CONVERGENCE = 2
EXIT_AUDIT_FAILED = 3


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="packingforge",
        description="Inversive distance circle packing metrics: curvature, "
                    "prescribed-curvature solving, and rigidity audits.",
        epilog="PACKING_FORGE_THREADS caps concurrent batch evaluation "
               "(default: available parallelism).")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", dest="as_json",
                        help="machine-readable output")
        return sp

    sp = add("validate", "check a packing document and report its topology")
    sp.add_argument("input")

    sp = add("angles", "per-face lengths, admissibility, and angles")
    sp.add_argument("input")

    sp = add("curvature", "per-vertex curvature (classical or alpha)")
    sp.add_argument("input")
    sp.add_argument("--alpha", type=float, default=0.0)

    sp = add("jacobian", "assemble the global curvature Jacobian")
    sp.add_argument("input")
    sp.add_argument("--spectrum", action="store_true")

    sp = add("solve", "find a metric with the document's prescribed curvature")
    sp.add_argument("input")
    sp.add_argument("-o", "--output", required=True)
    sp.add_argument("--method", choices=[m.value for m in SolveMethod],
                    default="newton")
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--max-iters", type=int, default=None)
    sp.add_argument("--seed", type=int, default=0,
                    help="seed for the random initial metric when the "
                         "document has no radii")

    sp = add("flow", "integrate the first-order curvature flow")
    sp.add_argument("input")
    sp.add_argument("-o", "--output", required=True)
    sp.add_argument("--step", type=float, default=1e-2)
    sp.add_argument("--steps", type=int, default=10 ** 5)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--seed", type=int, default=0)

    sp = add("audit", "run the numerical certification suites")
    sp.add_argument("input", nargs="?", default=None,
                    help="document path or fixture name "
                         f"({', '.join(sorted(FIXTURE_FACES))}); default: "
                         "built-in fixtures")
    sp.add_argument("--suite", default="all",
                    choices=["triangle", "jacobian", "global", "rigidity", "all"])
    sp.add_argument("--samples", type=int, default=10_000)
    sp.add_argument("--seed", type=int, default=0)

    sp = add("import-obj", "convert a triangle mesh to a packing document")
    sp.add_argument("input")
    sp.add_argument("-o", "--output", required=True)
    sp.add_argument("--default-I", type=float, default=1.0, dest="default_i")
    sp.add_argument("--geometry", choices=[g.value for g in Geometry],
                    default="euclidean")
    sp.add_argument("--default-radius", type=float, default=None)
    return p


def _emit(payload: dict, as_json: bool, lines: list[str]) -> None:
    if as_json:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(lines))


def _require_metric(doc: PackingDocument) -> PackingMetric:
    metric = doc.metric()
    if metric is None:
        raise DocumentError("document has no radii; this command needs a metric")
    return metric


def cmd_validate(args) -> int:
    doc = load_document(args.input)
    c = doc.to_complex()
    report = validate_weight_condition(c)
    weights = [v for _, v in doc.inversive_distances]
    payload = {
        "geometry": doc.geometry.value,
        "vertices": c.vertex_count,
        "edges": c.edge_count,
        "faces": c.face_count,
        "euler_characteristic": c.euler_char,
        "weight_range": [min(weights), max(weights)],
        "gamma_condition_all_pass": report.all_pass,
        "gamma_failing_faces": report.failing_faces,
    }
    lines = [
        f"geometry: {doc.geometry.value}",
        f"vertices {c.vertex_count}  edges {c.edge_count}  faces {c.face_count}",
        f"Euler characteristic chi = {c.euler_char}",
        f"inversive distances in [{min(weights):.6g}, {max(weights):.6g}]",
        ("all faces satisfy gamma >= 0" if report.all_pass else
         f"gamma condition FAILS on faces {report.failing_faces}"),
    ]
    _emit(payload, args.as_json, lines)
    return EXIT_OK


def cmd_angles(args) -> int:
    doc = load_document(args.input)
    c = doc.to_complex()
    metric = _require_metric(doc)
    reports = face_reports(c, metric)
    payload = {"geometry": doc.geometry.value, "faces": []}
    lines = [f"{'face':>4}  {'vertices':>12}  {'admissible':>10}  "
             f"{'angles':>30}"]
    extended = 0
    for rep in reports:
        extended += not rep.admissible
        payload["faces"].append({
            "index": rep.index,
            "vertices": list(rep.vertices),
            "lengths": [float(x) for x in rep.lengths],
            "admissible": rep.admissible,
            "angles": [float(x) for x in rep.angles],
            "area": rep.area,
        })
        ang = " ".join(f"{a:10.6f}" for a in rep.angles)
        lines.append(f"{rep.index:>4}  {str(rep.vertices):>12}  "
                     f"{str(rep.admissible):>10}  {ang}")
    lines.append(f"{extended} face(s) using extension values")
    payload["extended_faces"] = extended
    _emit(payload, args.as_json, lines)
    return EXIT_OK


def cmd_curvature(args) -> int:
    doc = load_document(args.input)
    c = doc.to_complex()
    metric = _require_metric(doc)
    k = curvature(c, metric, use_extension=True)
    gb = float(k.values.sum() - TWO_PI * c.euler_char)
    if metric.geometry is Geometry.HYPERBOLIC:
        gb -= float(face_areas(c, metric, use_extension=True).sum())
    payload = {
        "geometry": doc.geometry.value,
        "alpha": args.alpha,
        "curvatures": [float(x) for x in k.values],
        "gauss_bonnet_residual": gb,
        "extended": k.extended_flag,
    }
    lines = [f"{'vertex':>6}  {'radius':>12}  {'K':>14}"]
    values = k.values
    label = "K"
    if args.alpha != 0.0:
        ak = alpha_curvature(c, metric, args.alpha, use_extension=True)
        values = ak.values
        payload["alpha_curvatures"] = [float(x) for x in values]
        payload["s"] = [float(x) for x in ak.s]
        label = f"R_alpha (alpha={args.alpha:g})"
        lines = [f"{'vertex':>6}  {'radius':>12}  {label:>20}"]
    for i, v in enumerate(values):
        lines.append(f"{i:>6}  {metric.radii[i]:>12.6g}  {v:>14.10f}")
    lines.append(f"Gauss-Bonnet residual {abs(gb):.3e}")
    _emit(payload, args.as_json, lines)
    return EXIT_OK


def cmd_jacobian(args) -> int:
    doc = load_document(args.input)
    c = doc.to_complex()
    metric = _require_metric(doc)
    jac = global_jacobian(c, metric)
    dense = jac.dense()
    sym = float(np.abs(dense - dense.T).max())
    payload = {
        "geometry": doc.geometry.value,
        "shape": list(jac.matrix.shape),
        "nnz": int(jac.matrix.nnz),
        "symmetry_residual": sym,
    }
    lines = [
        f"global curvature Jacobian: {jac.matrix.shape[0]} x "
        f"{jac.matrix.shape[1]}, {jac.matrix.nnz} stored entries",
        f"symmetry residual {sym:.3e}",
    ]
    if args.spectrum:
        evals = np.linalg.eigvalsh(dense)
        payload["eigenvalues"] = [float(x) for x in evals]
        lines.append("eigenvalues: " + " ".join(f"{x:.6g}" for x in evals))
    _emit(payload, args.as_json, lines)
    return EXIT_OK


def _initial_metric(doc: PackingDocument, c: WeightedComplex,
                    seed: int) -> tuple[PackingMetric, Optional[int]]:
    metric = doc.metric()
    if metric is not None:
        return metric, None
    rng = np.random.default_rng(seed)
    radii = np.exp(rng.uniform(np.log(0.5), np.log(2.0), size=c.vertex_count))
    return PackingMetric(doc.geometry, radii), seed


def _downsample(history: np.ndarray, cap: int = 2000) -> tuple[list, int]:
    stride = max(1, int(np.ceil(len(history) / cap)))
    kept = list(map(float, history[::stride]))
    if stride > 1 and len(history) and (len(history) - 1) % stride:
        kept.append(float(history[-1]))
    return kept, stride


def _run_solver(args, method: SolveMethod) -> int:
    doc = load_document(args.input)
    c = doc.to_complex()
    if doc.target is None:
        raise DocumentError("document has no target block; nothing to solve for")
    initial, seed_used = _initial_metric(doc, c, args.seed)
    cfg = SolveConfig(
        method=method,
        grad_tol=args.tol,
        max_iters=(args.max_iters if method is SolveMethod.NEWTON
                   else args.steps),
        flow_step=(args.step if method is SolveMethod.FLOW else 1e-2),
    )
    outcome = solve(c, doc.target, initial, cfg)

    metric = outcome.metric
    k = curvature(c, metric, use_extension=True)
    history, stride = _downsample(outcome.residual_history)
    final_res = (float(outcome.residual_history[-1])
                 if len(outcome.residual_history) else float("nan"))
    solver_block = {
        "method": method.value,
        "status": outcome.status.value,
        "iterations": outcome.iterations,
        "gauge": outcome.gauge.value,
        "grad_tol": args.tol,
        "residual": final_res,
        "residual_history": history,
        "residual_history_stride": stride,
        "extended_faces_at_end": list(outcome.extended_faces_at_end),
        "seed": seed_used,
        "message": outcome.message,
    }
    alpha_block = None
    if doc.target.kind == "alpha":
        ak = alpha_curvature(c, metric, doc.target.alpha, use_extension=True)
        alpha_block = {"alpha": doc.target.alpha,
                       "values": [float(x) for x in ak.values],
                       "s": [float(x) for x in ak.s]}
    result = ResultDocument(
        input_sha256=doc.sha256(),
        geometry=doc.geometry,
        radii=metric.radii,
        u=to_u(metric),
        curvatures=k.values,
        alpha_block=alpha_block,
        solver=solver_block,
    )
    save_result(args.output, result)

    payload = {"output": args.output, **solver_block}
    lines = [
        f"status: {outcome.status.value}",
        f"iterations: {outcome.iterations}",
        f"final residual: {final_res:.3e} (tol {args.tol:g})",
        f"result written to {args.output}",
    ]
    if outcome.message:
        lines.append(f"note: {outcome.message}")
    _emit(payload, args.as_json, lines)
    if outcome.status is SolveStatus.CONVERGED:
        return EXIT_OK
    if outcome.status is SolveStatus.REFUSED:
        print(f"refused: {outcome.message}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_NO_CONVERGENCE


def cmd_solve(args) -> int:
    return _run_solver(args, SolveMethod(args.method))


def cmd_flow(args) -> int:
    return _run_solver(args, SolveMethod.FLOW)


def cmd_audit(args) -> int:
    c = None
    fixture_name = None
    if args.input is not None:
        if args.input in FIXTURE_FACES:
            fixture_name = args.input
        else:
            doc = load_document(args.input)
            c = doc.to_complex()
    reports = run_audit(args.suite, n_samples=args.samples, seed=args.seed,
                        fixture_name=fixture_name, c=c)
    payload = {"seed": args.seed, "samples": args.samples,
               "suite": args.suite,
               "reports": [r.to_dict() for r in reports]}
    lines = []
    ok = True
    for rep in reports:
        where = " ".join(x for x in (rep.fixture, rep.geometry) if x)
        lines.append(f"== {rep.suite} {where} (seed {rep.seed})")
        for chk in rep.checks:
            ok &= chk.passed
            tol = "inf" if not np.isfinite(chk.tolerance) else f"{chk.tolerance:.1e}"
            lines.append(
                f"  [{'PASS' if chk.passed else 'FAIL'}] {chk.name}: "
                f"worst {chk.worst_residual:.3e} (tol {tol}, "
                f"{chk.samples} samples)")
    lines.append("ALL CHECKS PASSED" if ok else "SOME CHECKS FAILED")
    _emit(payload, args.as_json, lines)
    return EXIT_OK if ok else EXIT_AUDIT_FAILED


def cmd_import_obj(args) -> int:
    vertices = 0
    faces: list[tuple[int, int, int]] = []
    try:
        with open(args.input, "r", encoding="utf-8") as fh:
            for ln, line in enumerate(fh, 1):
                parts = line.split()
                if not parts or parts[0] not in ("v", "f"):
                    continue
                if parts[0] == "v":
                    vertices += 1
                    continue
                idx = [int(tok.split("/")[0]) for tok in parts[1:]]
                if len(idx) != 3:
                    raise DocumentError(
                        f"{args.input}:{ln}: face has {len(idx)} vertices; "
                        "only triangle meshes can carry packing data")
                faces.append(tuple(v - 1 for v in idx))
    except (OSError, ValueError) as exc:
        raise DocumentError(f"{args.input}: {exc}") from exc
    if not faces:
        raise DocumentError(f"{args.input}: no faces found")

    edges = sorted({canonical_edge(a, b)
                    for f in faces for a, b in ((f[0], f[1]), (f[1], f[2]),
                                                (f[0], f[2]))})
    radii = None
    if args.default_radius is not None:
        radii = np.full(vertices, float(args.default_radius))
    doc = PackingDocument(
        geometry=Geometry(args.geometry),
        vertices=vertices,
        faces=tuple(faces),
        inversive_distances=tuple((e, float(args.default_i)) for e in edges),
        radii=radii,
    )
    doc.to_complex()  # reject non-manifold meshes before writing
    save_document(args.output, doc)
    payload = {"output": args.output, "vertices": vertices,
               "faces": len(faces), "edges": len(edges),
               "default_inversive_distance": args.default_i}
    _emit(payload, args.as_json,
          [f"wrote {args.output}: {vertices} vertices, {len(edges)} edges, "
           f"{len(faces)} faces, I = {args.default_i:g} on every edge"])
    return EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "angles": cmd_angles,
    "curvature": cmd_curvature,
    "jacobian": cmd_jacobian,
    "solve": cmd_solve,
    "flow": cmd_flow,
    "audit": cmd_audit,
    "import-obj": cmd_import_obj,
}


def cli_dispatch(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_INVALID
    try:
        return COMMANDS[args.command](args)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except PackingForgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(cli_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
