"""Command-line front end: JSON problems in, schema-checked JSON out.

Problem documents validate against ``schemas/problem.schema.json`` before
anything runs; unknown fields are rejected.  Every emitted document is
validated against the matching published schema before printing, and
numbers ride through ``json`` with shortest round-trip formatting, so a
document read back reproduces the exact floats.  Exit codes: 0 all pass,
1 a check failed, 2 usage or schema error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from importlib import resources

import jsonschema

from .cones import (
    ConeWithVertex,
    find_double_dual_certificate,
    generalized_double_dual_member,
    intersection_dual_check_family,
    member_generalized_dual,
    member_metric_dual,
    metric_double_dual_violation,
    probe_nonconvexity_metric_dual,
)
from .faces import classify_point, face, vision_conjugation_check, vision_dual_member
from .projections import SolverOptions, generalized_project, metric_project
from .sets import Ball, FinitelyGeneratedCone, Line, Polytope, Ray, Segment, Subspace
from .spaces import LpSpace, duality_map, norm, pair
from .suite import TOOLKIT_VERSION, _jsonable, _witness_json, fuzz_target_ids, run_fuzz, run_verification_suite

__all__ = ["main"]


class _UsageError(Exception):
    pass


def _schema(name: str) -> dict:
    text = resources.files("lpgeom.schemas").joinpath(name).read_text(encoding="utf-8")
    return json.loads(text)


def _validate(instance: dict, schema_name: str) -> None:
    jsonschema.validate(instance, _schema(schema_name), cls=jsonschema.Draft202012Validator)


def _load_problem(path: str | None) -> dict:
    try:
        if path in (None, "-"):
            raw = sys.stdin.read()
        else:
            with open(path, "r", encoding="utf-8") as fh:
                raw = fh.read()
        doc = json.loads(raw)
    except OSError as exc:
        raise _UsageError(f"cannot read problem document: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise _UsageError(f"problem document is not valid JSON: {exc}") from exc
    try:
        _validate(doc, "problem.schema.json")
    except jsonschema.ValidationError as exc:
        raise _UsageError(f"problem document rejected by schema: {exc.message}") from exc
    return doc


def _space_from(doc: dict) -> LpSpace:
    p = doc["p"]
    p = math.inf if p == "inf" else float(p)
    return LpSpace(int(doc["n"]), p, weights=doc.get("weights"))


def _space_echo(space: LpSpace) -> dict:
    return {
        "n": space.n,
        "p": "inf" if math.isinf(space.p) else float(space.p),
        "weights": [float(w) for w in space.weights],
    }


def _set_from(space: LpSpace, d: dict):
    t = d["type"]
    if t == "segment":
        return Segment(space.point(d["a"]), space.point(d["b"]))
    if t == "ray":
        return Ray(space.point(d["vertex"]), space.point(d["direction"]))
    if t == "line":
        return Line(space.point(d["point"]), space.point(d["direction"]))
    if t == "cone":
        return FinitelyGeneratedCone(
            space.point(d["vertex"]), [space.point(g) for g in d["generators"]]
        )
    if t == "polytope":
        return Polytope([space.point(v) for v in d["vertices"]])
    if t == "ball":
        return Ball(space, float(d["r"]))
    return Subspace(space, [space.point(b) for b in d["basis"]])


def _vec(v) -> list[float]:
    return [float(c) for c in v.coords]


def _need(doc: dict, field: str):
    if field not in doc:
        raise _UsageError(f"operation requires the '{field}' field")
    return doc[field]


def _the_set(space, doc):
    return _set_from(space, _need(doc, "set"))


def _projection_result(res) -> tuple[dict, str]:
    out = {
        "point": _vec(res.point),
        "objective": float(res.objective),
        "vi_residual": float(res.vi_residual),
        "iterations": int(res.iterations),
        "converged": bool(res.converged),
        "method": res.method,
    }
    return out, "pass" if res.converged else "fail"


def _op_project(space, doc, tol, seed, trials):
    C = _the_set(space, doc)
    x = space.point(_need(doc, "point"))
    return _projection_result(metric_project(C, x, SolverOptions(vi_tol=tol)))


def _op_gproject(space, doc, tol, seed, trials):
    C = _the_set(space, doc)
    psi = space.functional(_need(doc, "functional"))
    return _projection_result(generalized_project(C, psi, SolverOptions(vi_tol=tol)))


def _op_face(space, doc, tol, seed, trials):
    C = _the_set(space, doc)
    psi = space.functional(_need(doc, "functional"))
    desc = face(C, psi, tol=tol)
    unbounded = math.isinf(desc.level)
    out = {
        "level": None if unbounded else float(desc.level),
        "unbounded": unbounded,
        "kind": desc.kind,
        "representatives": [_vec(r) for r in desc.representatives],
    }
    if all(math.isfinite(g) for g in desc.gaps):
        out["gaps"] = [float(g) for g in desc.gaps]
    return out, "pass"


def _op_vision(space, doc, tol, seed, trials):
    C = _the_set(space, doc)
    y = space.point(_need(doc, "point"))
    has_dual = "functional" in doc
    has_primal = "probe_point" in doc
    if has_dual == has_primal:
        raise _UsageError("vision takes exactly one of 'functional' or 'probe_point'")
    if has_dual:
        member = vision_dual_member(C, y, space.functional(doc["functional"]), tol=tol)
        return {"member": bool(member), "route": "dual"}, "pass"
    u = space.point(doc["probe_point"])
    member = vision_conjugation_check(C, y, u, tol=tol)
    return {"member": bool(member), "route": "primal", "routes_agree": True}, "pass"


def _op_classify(space, doc, tol, seed, trials):
    C = _the_set(space, doc)
    y = space.point(_need(doc, "point"))
    res = classify_point(C, y, tol=tol)
    out = {
        "verdict": res.verdict,
        "witness": None if res.witness is None else _vec(res.witness),
        "method": res.method,
    }
    return out, "pass"


def _op_dualcone(space, doc, tol, seed, trials, kind, check):
    if kind == "generalized" and check == "identity":
        sets_doc = _need(doc, "sets")
        cones = [_set_from(space, d) for d in sets_doc]
        for c in cones:
            ConeWithVertex.of(c)
        rep = intersection_dual_check_family(cones, seed=seed, trials=trials, tol=tol)
        out = {
            "ok": bool(rep.ok),
            "forward_margin": float(rep.forward_margin),
            "backward_residual": float(rep.backward_residual),
            "intersection_generators": [_vec(g) for g in rep.intersection_generators],
            "sampled": int(rep.sampled),
        }
        return out, "pass" if rep.ok else "fail"

    K = ConeWithVertex.of(_the_set(space, doc))

    if check == "member":
        if kind == "metric":
            member = member_metric_dual(K, space.point(_need(doc, "point")), tol=tol)
        else:
            member = member_generalized_dual(K, space.functional(_need(doc, "functional")), tol=tol)
        return {"member": bool(member), "certificate": None}, "pass"

    if check == "convexity":
        if kind == "metric":
            w = probe_nonconvexity_metric_dual(K, seed=seed, trials=trials)
            out = {
                "witness_found": w is not None,
                "witness": None if w is None else _witness_json(w),
                "trials": trials,
            }
            return out, "pass"
        escapes, pairs = _generalized_convexity_probe(K, seed, trials, tol)
        out = {
            "witness_found": escapes > 0,
            "witness": None,
            "trials": trials,
            "escapes": escapes,
            "sampled_pairs": pairs,
        }
        return out, "pass" if escapes == 0 else "fail"

    if check == "double-dual":
        if kind == "metric":
            w = metric_double_dual_violation(K, seed=seed, trials=trials)
            out = {
                "witness_found": w is not None,
                "witness": None if w is None else _witness_json(w),
                "trials": trials,
            }
            return out, "pass"
        z = space.point(_need(doc, "point"))
        member = generalized_double_dual_member(K, z, tol=tol)
        cert = None if member else find_double_dual_certificate(K, z, tol=tol)
        out = {
            "member": bool(member),
            "certificate": None if cert is None else _witness_json(cert),
        }
        return out, "pass"

    # identity, metric kind: the inner-product defect of the projection
    if any(c != 0.0 for c in K.vertex.coords):
        raise ValueError("the identity check is defined for cones with vertex at the origin")
    w = space.point(_need(doc, "point"))
    res = metric_project(K.to_set(), w, SolverOptions(vi_tol=tol if tol < 1e-6 else 1e-6))
    if not res.converged:
        raise RuntimeError("projection did not certify; defect value would be unreliable")
    defect = pair(duality_map(w), res.point) - norm(res.point) ** 2
    return {"defect": float(defect), "point": _vec(res.point)}, "pass"


def _generalized_convexity_probe(K, seed, trials, tol):
    """Convex combinations of generalized dual members must stay members."""
    import numpy as np

    space = K.space
    jv = duality_map(K.vertex)
    rng = np.random.default_rng(seed)
    pairs = escapes = 0
    attempts = 0
    while pairs < trials and attempts < 50 * trials:
        attempts += 1
        a = jv + space.functional(rng.normal(size=space.n) * 2.0)
        b = jv + space.functional(rng.normal(size=space.n) * 2.0)
        if not (member_generalized_dual(K, a, tol=tol) and member_generalized_dual(K, b, tol=tol)):
            continue
        pairs += 1
        for lam in (0.25, 0.5, 0.75):
            h = lam * a + (1.0 - lam) * b
            if not member_generalized_dual(K, h, tol=max(tol, 1e-9)):
                escapes += 1
    return escapes, pairs


_SINGLE_OPS = {
    "project": _op_project,
    "gproject": _op_gproject,
    "face": _op_face,
    "vision": _op_vision,
    "classify": _op_classify,
}


def _run_single(args, operation: str) -> int:
    doc = _load_problem(args.input)
    if doc["operation"] != operation:
        raise _UsageError(
            f"document declares operation {doc['operation']!r} but the "
            f"{operation!r} subcommand was invoked"
        )
    space = _space_from(doc["space"])
    tol = args.tol if args.tol is not None else float(doc.get("tol", 1e-9))
    seed = args.seed if args.seed is not None else int(doc.get("seed", 0))
    trials = args.trials if args.trials is not None else int(doc.get("trials", 200))

    t0 = time.perf_counter()
    if operation == "dualcone":
        result, status = _op_dualcone(space, doc, tol, seed, trials, args.kind, args.check)
    else:
        if operation in ("project", "gproject") and args.tol is None and "tol" not in doc:
            tol = 1e-6  # default certificate tolerance for the solvers
        result, status = _SINGLE_OPS[operation](space, doc, tol, seed, trials)
    elapsed = time.perf_counter() - t0

    out = {
        "tool": "lpgeom",
        "version": TOOLKIT_VERSION,
        "operation": operation,
        "status": status,
        "space": _space_echo(space),
        "result": _jsonable(result),
        "elapsed_seconds": elapsed,
    }
    if operation == "dualcone":
        out["kind"] = args.kind
        out["check"] = args.check
    _validate(out, "result.schema.json")
    if args.json:
        print(json.dumps(out, indent=2, allow_nan=False))
    else:
        for line in _human_lines(operation, result, status):
            print(line)
    return 0 if status == "pass" else 1


def _human_lines(operation: str, result: dict, status: str) -> list[str]:
    lines = []
    for key, val in result.items():
        lines.append(f"{key}: {val}")
    lines.append(f"status: {status}")
    return lines


def _run_verify(args) -> int:
    rep = run_verification_suite(seed=args.seed or 0, force_p=args.p)
    doc = rep.to_json()
    _validate(doc, "report.schema.json")
    if args.json:
        print(json.dumps(doc, indent=2, allow_nan=False))
    else:
        for line in rep.summary_lines():
            print(line)
    return 0 if rep.ok else 1


def _run_fuzz(args) -> int:
    try:
        rep = run_fuzz(
            args.target,
            trials=args.trials if args.trials is not None else 200,
            seed=args.seed or 0,
            p=args.p,
            tol=args.tol if args.tol is not None else 1e-9,
        )
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    doc = rep.to_json()
    _validate(doc, "report.schema.json")
    if args.json:
        print(json.dumps(doc, indent=2, allow_nan=False))
    else:
        for line in rep.summary_lines():
            print(line)
    return 0 if rep.ok else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lpgeom",
        description="projections, dual cones, faces, and visions in weighted "
        "finite-dimensional l_p spaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp, with_io=True):
        if with_io:
            sp.add_argument("--input", default=None, help="problem JSON file ('-' or omit for stdin)")
        sp.add_argument("--json", action="store_true", help="emit the full JSON document")
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--tol", type=float, default=None)
        sp.add_argument("--trials", type=int, default=None)

    for name, blurb in (
        ("project", "metric projection onto a set"),
        ("gproject", "generalized projection of a functional onto a set"),
        ("face", "face of a functional on a set"),
        ("vision", "membership of a vision set"),
        ("classify", "internal-or-cuticle classification of a member"),
    ):
        add_common(sub.add_parser(name, help=blurb))

    dc = sub.add_parser("dualcone", help="dual-cone membership, convexity, and identity checks")
    add_common(dc)
    dc.add_argument("--kind", choices=("metric", "generalized"), required=True)
    dc.add_argument("--check", choices=("member", "convexity", "double-dual", "identity"), required=True)

    ver = sub.add_parser("verify", help="run the full reproducible verification suite")
    add_common(ver, with_io=False)
    ver.add_argument("--p", type=float, default=None, help="force the witness checks to this exponent")

    fz = sub.add_parser("fuzz", help="randomized property run for one target")
    add_common(fz, with_io=False)
    fz.add_argument("--target", required=True, help=f"one of: {', '.join(fuzz_target_ids())}")
    fz.add_argument("--p", type=float, default=None)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            return _run_verify(args)
        if args.command == "fuzz":
            return _run_fuzz(args)
        return _run_single(args, args.command)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except jsonschema.ValidationError as exc:
        print(f"internal document failed schema validation: {exc.message}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"check failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
