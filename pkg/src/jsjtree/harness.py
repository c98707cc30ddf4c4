"""Exhaustive small-graph validation tying the tree constructions together."""
from __future__ import annotations

from dataclasses import dataclass, field
from multiprocessing import Pool

import networkx as nx
import numpy as np

from .cutpoint import CutPointAnalysis, _build, adjacency_findings
from .enumerate import automorphisms, connected_graphs, to_networkx
from .errors import ModelFidelityError, PreconditionError
from .graph import Graph, is_biconnected
from .groups import compose, induced_action
from .jsj import JsjAnalysis, _pretree, structure_findings
from .pretree import CLASS, CUT_POINT, realize_tree, tree_betweenness, validate_pretree

__all__ = [
    "ValidationSummary",
    "check_graph",
    "block_cut_edges",
    "cutpoint_tree_edges",
    "exhaustive_validate",
    "revalidate",
    "MAX_N",
]

MAX_N = 7
WITNESS_CAP = 10

# check name -> pretree validation keys it covers
_AXIOMS = ("symmetric", "endpoints_excluded", "asymmetric", "transitive", "linear_order")
_SUBSET = ("interval_monotone",)
_NESTED = ("nested_union", "supremum")


def block_cut_edges(G: Graph) -> set[frozenset]:
    """Block-cut tree edges from networkx, as ``{("cut", v), ("block", B)}`` pairs."""
    H = to_networkx(G)
    if G.n == 1:
        return set()
    arts = set(nx.articulation_points(H))
    blocks = [tuple(sorted(b)) for b in nx.biconnected_components(H)]
    return {
        frozenset((("cut", (a,)), ("block", b))) for b in blocks for a in b if a in arts
    }


def block_cut_nodes(G: Graph) -> set:
    H = to_networkx(G)
    if G.n == 1:
        return {("block", (0,))}
    arts = set(nx.articulation_points(H))
    return {("cut", (a,)) for a in arts} | {
        ("block", tuple(sorted(b))) for b in nx.biconnected_components(H)
    }


def _node_key(e) -> tuple:
    return ("cut", e.members) if e.kind == CUT_POINT else ("block", e.closure)


def cutpoint_tree_edges(T) -> set[frozenset]:
    return {frozenset((_node_key(T.nodes[i]), _node_key(T.nodes[j]))) for i, j in T.edges}


def _report_checks(out: dict, prefix: str, rep) -> None:
    for name, keys in (("axioms", _AXIOMS), ("subset", _SUBSET), ("nested", _NESTED)):
        bad = [(k, rep.witnesses[k]) for k in keys if k in rep.witnesses]
        out[f"{prefix}.{name}"] = bad[0] if bad else None


def _equivariance(P, T, autos) -> tuple | None:
    """Every automorphism must induce a betweenness- and adjacency-preserving
    map, and the induced maps must compose like the automorphisms."""
    acts = {}
    for s in autos:
        try:
            acts[s] = induced_action(s, P)
            induced_action(s, T)
        except ModelFidelityError as exc:
            return (list(s), str(exc))
    for s in autos[:4]:
        for t in autos[:4]:
            st = compose(s, t)
            if acts[st] != compose(acts[s], acts[t]):
                return (list(s), list(t), "induced action is not a homomorphism")
    return None


def check_graph(G: Graph, equivariance: bool = True) -> dict[str, object]:
    """Run every check on one graph; values are ``None`` (pass) or a witness."""
    out: dict[str, object] = {}
    try:
        P = _build(CutPointAnalysis(G))
        T = realize_tree(P)
    except ModelFidelityError as exc:
        out["cutpoint.construct"] = (str(exc), exc.witness)
        return out
    out["cutpoint.construct"] = None
    _report_checks(out, "cutpoint", validate_pretree(P))
    found = adjacency_findings(P)
    out["cutpoint.adjacent"] = found[0] if found else None
    nodes = {_node_key(e) for e in P.elements}
    ok = nodes == block_cut_nodes(G) and cutpoint_tree_edges(T) == block_cut_edges(G)
    out["cutpoint.block_cut"] = None if ok else sorted(map(str, nodes ^ block_cut_nodes(G)))
    hit = np.argwhere(tree_betweenness(T) != P.table)
    out["cutpoint.tree_path"] = None if len(hit) == 0 else tuple(
        P.elements[int(i)].label() for i in hit[0]
    )
    autos = automorphisms(G) if equivariance else []
    if equivariance:
        out["cutpoint.equivariance"] = _equivariance(P, T, autos)

    if G.n >= 3 and is_biconnected(G):
        A = JsjAnalysis(G)
        try:
            JP = _pretree(A, validate=False)
            JT = realize_tree(JP)
            realize_tree(JP, trim=True)
        except ModelFidelityError as exc:
            out["jsj.construct"] = (str(exc), exc.witness)
            return out
        out["jsj.construct"] = None
        _report_checks(out, "jsj", validate_pretree(JP))
        found = structure_findings(A, JP)
        out["jsj.structure"] = found[0] if found else None
        hit = np.argwhere(tree_betweenness(JT) != JP.table)
        out["jsj.tree_path"] = None if len(hit) == 0 else tuple(
            JP.elements[int(i)].label() for i in hit[0]
        )
        if equivariance:
            out["jsj.equivariance"] = _equivariance(JP, JT, autos)
    return out


def revalidate(graph: dict, check: str, equivariance: bool = True) -> bool:
    """True iff ``check`` still fails on the graph of a reported witness."""
    return check_graph(Graph.from_json(graph), equivariance).get(check) is not None


@dataclass
class ValidationSummary:
    max_n: int
    graphs_scanned: int = 0
    per_n: dict = field(default_factory=dict)
    biconnected_scanned: int = 0
    checks: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)

    @property
    def failures(self) -> int:
        return sum(c["fail"] for c in self.checks.values())

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def merge(self, G: Graph, result: dict) -> None:
        self.graphs_scanned += 1
        self.per_n[G.n] = self.per_n.get(G.n, 0) + 1
        if "jsj.construct" in result:
            self.biconnected_scanned += 1
        for name in sorted(result):
            slot = self.checks.setdefault(name, {"pass": 0, "fail": 0})
            if result[name] is None:
                slot["pass"] += 1
            else:
                slot["fail"] += 1
                if slot["fail"] <= WITNESS_CAP:
                    self.witnesses.append(
                        {"check": name, "graph": G.to_json(), "witness": _plain(result[name])}
                    )

    def to_json(self) -> dict:
        return {
            "max_n": self.max_n,
            "graphs_scanned": self.graphs_scanned,
            "per_n": {str(k): v for k, v in sorted(self.per_n.items())},
            "biconnected_scanned": self.biconnected_scanned,
            "checks": {k: self.checks[k] for k in sorted(self.checks)},
            "passed": self.passed,
            "witnesses": self.witnesses,
        }


def _plain(x):
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return str(x)


def _job(args):
    G, equivariance = args
    return check_graph(G, equivariance)


def exhaustive_validate(
    max_n: int, equivariance: bool = True, workers: int = 1
) -> ValidationSummary:
    """Scan every labeled connected graph with at most ``max_n`` vertices.

    Graphs are processed in enumeration order and merged in that order, so
    the summary does not depend on ``workers``.
    """
    if not 1 <= max_n <= MAX_N:
        raise PreconditionError(f"max_n must lie in 1..{MAX_N}")
    summary = ValidationSummary(max_n)
    graphs = [G for n in range(1, max_n + 1) for G in connected_graphs(n)]
    jobs = [(G, equivariance) for G in graphs]
    if workers > 1:
        with Pool(workers) as pool:
            results = pool.map(_job, jobs, chunksize=64)
    else:
        results = map(_job, jobs)
    for G, res in zip(graphs, results):
        summary.merge(G, res)
    return summary
