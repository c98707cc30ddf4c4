"""Command-line entry point.

Every command writes JSON (stdout, or ``-o FILE``); tree-like outputs also
write Graphviz DOT to ``--dot FILE``.  Exit status: 0 success, 1 a
mathematical check failed, 2 bad input.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import io
from .cutpoint import adjacency_findings, inseparable_classes
from .errors import GraphError, ModelFidelityError, PreconditionError
from .graph import is_biconnected
from .groups import (
    GraphOfGroups,
    build_group,
    check_nonnesting,
    collapse_to_reduced,
    quotient_graph_of_groups,
    refine,
)
from .harness import MAX_N, exhaustive_validate
from .jsj import jsj_report, jsj_tree
from .pretree import realize_tree
from .tits import (
    default_theta_grid,
    limit_points,
    single_tree_dynamics,
    summarize,
    verify_pi_convergence,
)

EXIT_OK, EXIT_CHECK, EXIT_INPUT = 0, 1, 2
AGREEMENT_TARGET = 32


class InputError(Exception):
    pass


def _emit(args, payload: dict, dot: str | None = None) -> None:
    text = io.dumps(payload)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if getattr(args, "dot", None):
        if dot is None:
            raise InputError(f"command {args.command!r} has no DOT rendering")
        Path(args.dot).write_text(dot, encoding="utf-8")


def cmd_cutpoint_tree(args) -> int:
    G = io.load_graph(args.graph)
    P = inseparable_classes(G)
    T = realize_tree(P, trim=args.trim)
    findings = adjacency_findings(P)
    _emit(
        args,
        {
            "elements": [e.to_json() for e in P.elements],
            "tree": T.to_json(),
            "trim": args.trim,
            "findings": [list(f) for f in findings],
        },
        T.to_dot("cutpoint_tree"),
    )
    return EXIT_CHECK if findings else EXIT_OK


def cmd_jsj_tree(args) -> int:
    G = io.load_graph(args.graph)
    rep = jsj_report(G, trim=args.trim)
    _emit(args, rep.to_json(), rep.tree.to_dot("jsj_tree"))
    return EXIT_CHECK if rep.findings else EXIT_OK


def cmd_quotient(args) -> int:
    G = io.load_graph(args.graph)
    gens = io.load_generators(args.generators) if args.generators else []
    H = build_group(G, gens, cap=args.cap)
    kind = args.tree
    if kind == "auto":
        kind = "jsj" if G.n >= 3 and is_biconnected(G) else "cutpoint"
    T = jsj_tree(G, trim=args.trim) if kind == "jsj" else realize_tree(inseparable_classes(G), trim=args.trim)
    if not T.nodes:
        raise PreconditionError("the decomposition tree is empty; nothing to quotient")
    gamma = quotient_graph_of_groups(H, T)
    nest = check_nonnesting(H, T)
    _emit(
        args,
        {"tree_kind": kind, "group": H.to_json(), "tree": T.to_json(), "quotient": gamma.to_json(), "nonnesting": nest},
        gamma.to_dot("quotient"),
    )
    return EXIT_OK if nest["passed"] else EXIT_CHECK


def cmd_gog(args) -> int:
    data = io.load_json(args.file)
    if args.action == "refine":
        if not isinstance(data, dict):
            raise InputError("refine input must be a JSON object")
        if "gamma" in data:
            gamma = GraphOfGroups.from_json(data["gamma"])
            vertex = args.vertex or data.get("vertex")
            delta_json = io.load_json(args.delta) if args.delta else data.get("delta")
        else:
            gamma = GraphOfGroups.from_json(data)
            vertex, delta_json = args.vertex, io.load_json(args.delta) if args.delta else None
        if vertex is None or delta_json is None:
            raise InputError("refine needs a vertex and a decomposition (--vertex, --delta)")
        try:
            out = refine(gamma, str(vertex), GraphOfGroups.from_json(delta_json))
        except KeyError:
            raise InputError(f"vertex {vertex!r} is not in the graph of groups") from None
        _emit(args, out.to_json(), out.to_dot("refined"))
        return EXIT_OK
    gamma = GraphOfGroups.from_json(data)
    trace: list = []
    out = collapse_to_reduced(gamma, trace)
    payload = out.to_json()
    payload["trace"] = trace
    _emit(args, payload, out.to_dot("reduced"))
    return EXIT_OK


def cmd_pi_check(args) -> int:
    cfg = io.load_json(args.config) if args.config else {}
    model = cfg.get("model", {})
    iso = cfg.get("isometry", {})
    w1 = args.w1 if args.w1 is not None else iso.get("w1", "")
    w2 = args.w2 if args.w2 is not None else iso.get("w2", "")
    ranks = (int(model.get("rank1", args.rank1)), int(model.get("rank2", args.rank2)))
    samples = int(cfg.get("samples", args.samples))
    seed = int(cfg.get("seed", args.seed))
    tol = float(cfg.get("tol", args.tol))
    grid = cfg.get("theta_grid")
    grid = default_theta_grid() if grid is None else [float(t) for t in grid]
    if any(not 0 <= t <= math.pi for t in grid):
        raise InputError("theta_grid values must lie in [0, pi]")
    certs = verify_pi_convergence((w1, w2), samples, grid, seed, tol, ranks)
    n, p = limit_points((w1, w2))
    summary = summarize(certs)
    payload = {
        "isometry": {"w1": w1, "w2": w2},
        "model": {"rank1": ranks[0], "rank2": ranks[1]},
        "n": n.to_json(),
        "p": p.to_json(),
        "samples": samples,
        "seed": seed,
        "tol": tol,
        "theta_grid": grid,
        "summary": summary,
    }
    if not args.summary_only:
        payload["certificates"] = [c.to_json() for c in certs]
    _emit(args, payload)
    return EXIT_CHECK if summary["fail"] else EXIT_OK


def cmd_dynamics(args) -> int:
    traces = single_tree_dynamics(
        args.word, None, args.k_max, args.samples, args.seed, args.rank, on_axis=args.on_axis
    )
    ok = all(t.frozen or (t.nondecreasing and t.agreement[-1] >= min(AGREEMENT_TARGET, args.k_max // 2)) for t in traces)
    _emit(
        args,
        {
            "word": args.word,
            "k_max": args.k_max,
            "factor_distance_between_distinct_ends": "inf",
            "traces": [t.to_json() for t in traces],
            "passed": ok,
        },
    )
    return EXIT_OK if ok else EXIT_CHECK


def cmd_validate(args) -> int:
    summary = exhaustive_validate(args.max_n, equivariance=not args.no_equivariance, workers=args.workers)
    _emit(args, summary.to_json())
    return EXIT_OK if summary.passed else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="jsjtree", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, dot=True):
        sp.add_argument("-o", "--output", help="write JSON here instead of stdout")
        if dot:
            sp.add_argument("--dot", metavar="FILE", help="also write a Graphviz rendering")

    sp = sub.add_parser("cutpoint-tree", help="cut-point pretree and tree of a connected graph")
    sp.add_argument("graph")
    sp.add_argument("--trim", action="store_true", help="drop terminal elements before gluing")
    common(sp)
    sp.set_defaults(func=cmd_cutpoint_tree)

    sp = sub.add_parser("jsj-tree", help="JSJ elements, gaps and tree of a 2-connected graph")
    sp.add_argument("graph")
    sp.add_argument("--trim", action="store_true", help="drop terminal elements before gluing")
    common(sp)
    sp.set_defaults(func=cmd_jsj_tree)

    sp = sub.add_parser("quotient", help="quotient graph of groups of a tree by a symmetry group")
    sp.add_argument("graph")
    sp.add_argument("generators", nargs="?", help="JSON list of image arrays (default: trivial group)")
    sp.add_argument("--tree", choices=("auto", "cutpoint", "jsj"), default="auto")
    sp.add_argument("--trim", action="store_true")
    sp.add_argument("--cap", type=int, default=10080, help="maximum group order (default 10080)")
    common(sp)
    sp.set_defaults(func=cmd_quotient)

    sp = sub.add_parser("gog", help="graph-of-groups rewriting")
    sp.add_argument("action", choices=("refine", "collapse"))
    sp.add_argument("file")
    sp.add_argument("--vertex", help="vertex to refine (overrides the file)")
    sp.add_argument("--delta", help="decomposition of the vertex group (overrides the file)")
    common(sp)
    sp.set_defaults(func=cmd_gog)

    sp = sub.add_parser("pi-check", help="pi-convergence certificates in the product-of-trees model")
    sp.add_argument("config", nargs="?", help="JSON config: model, isometry, samples, seed, tol, theta_grid")
    sp.add_argument("--w1")
    sp.add_argument("--w2")
    sp.add_argument("--rank1", type=int, default=2)
    sp.add_argument("--rank2", type=int, default=2)
    sp.add_argument("--samples", type=int, default=500)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.add_argument("--summary-only", action="store_true", help="omit the certificate array")
    common(sp, dot=False)
    sp.set_defaults(func=cmd_pi_check)

    sp = sub.add_parser("dynamics", help="north-south dynamics of a word on one tree")
    sp.add_argument("--word", required=True)
    sp.add_argument("--samples", type=int, default=10)
    sp.add_argument("--k-max", type=int, default=64)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--rank", type=int, default=2)
    sp.add_argument("--on-axis", action="store_true", help="measure agreement from the axis, not the identity")
    common(sp, dot=False)
    sp.set_defaults(func=cmd_dynamics)

    sp = sub.add_parser("validate", help="exhaustive checks over small connected graphs")
    sp.add_argument("--max-n", type=int, default=5, help=f"largest vertex count, at most {MAX_N}")
    sp.add_argument("--no-equivariance", action="store_true")
    sp.add_argument("--workers", type=int, default=1)
    common(sp, dot=False)
    sp.set_defaults(func=cmd_validate)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ModelFidelityError as exc:
        print(f"error: model check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except (GraphError, PreconditionError, InputError, OSError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
