"""Finite symmetry groups acting on decomposition trees, and graphs of groups.

Group elements are vertex permutations stored as image tuples; ``p[v]`` is
the image of ``v``.  Composition ``compose(p, q)`` applies ``q`` first.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import GraphError, ModelFidelityError, PreconditionError
from .graph import Graph
from .pretree import DecompositionTree, Pretree

__all__ = [
    "SymmetryGroup",
    "OrbitReport",
    "GraphOfGroups",
    "compose",
    "perm_from_cycles",
    "inverse",
    "is_automorphism",
    "build_group",
    "induced_action",
    "orbits_and_stabilizers",
    "quotient_graph_of_groups",
    "refine",
    "collapse_to_reduced",
    "non_reduced_vertices",
    "check_nonnesting",
]

Perm = tuple


def compose(p: Sequence[int], q: Sequence[int]) -> Perm:
    return tuple(p[v] for v in q)


def inverse(p: Sequence[int]) -> Perm:
    out = [0] * len(p)
    for v, w in enumerate(p):
        out[w] = v
    return tuple(out)


def is_automorphism(G: Graph, p: Sequence[int]) -> bool:
    if len(p) != G.n or sorted(p) != list(range(G.n)):
        return False
    return all(G.has_edge(p[u], p[v]) for u, v in G.edges)


def perm_from_cycles(n: int, cycles: Iterable[Sequence[int]]) -> Perm:
    """Image tuple of the permutation given in cycle notation, e.g. ``[(1, 5), (2, 4)]``."""
    img = list(range(n))
    for cyc in cycles:
        for i, v in enumerate(cyc):
            img[v] = cyc[(i + 1) % len(cyc)]
    return tuple(img)


@dataclass(frozen=True)
class SymmetryGroup:
    graph: Graph
    generators: tuple[Perm, ...]
    elements: tuple[Perm, ...]
    cap: int

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Perm:
        return tuple(range(self.graph.n))

    def to_json(self) -> dict:
        return {"generators": [list(g) for g in self.generators], "order": self.order}


def build_group(G: Graph, gens: Iterable[Sequence[int]], cap: int = 10080) -> SymmetryGroup:
    """Close ``gens`` under composition; elements come out lexicographically sorted."""
    gens = tuple(tuple(int(v) for v in g) for g in gens)
    for g in gens:
        if not is_automorphism(G, g):
            raise GraphError(f"generator {list(g)} is not an automorphism of the graph")
    ident = tuple(range(G.n))
    seen = {ident}
    queue = deque([ident])
    while queue:
        p = queue.popleft()
        for g in gens:
            q = compose(g, p)
            if q not in seen:
                seen.add(q)
                if len(seen) > cap:
                    raise PreconditionError(f"group order exceeds the cap of {cap}")
                queue.append(q)
    return SymmetryGroup(G, gens, tuple(sorted(seen)), cap)


def induced_action(sigma: Sequence[int], structure: Pretree | DecompositionTree) -> tuple[int, ...]:
    """Node (or element) permutation induced by a graph automorphism.

    Betweenness (for a pretree) or adjacency (for a tree) must be preserved;
    any failure is a :class:`ModelFidelityError`.
    """
    items = structure.elements if isinstance(structure, Pretree) else structure.nodes
    index = {e.key: i for i, e in enumerate(items)}
    img = []
    for e in items:
        k = e.image(sigma).key
        if k not in index:
            raise ModelFidelityError(
                f"image of {e.label()} under {list(sigma)} is not an element", witness=e.label()
            )
        img.append(index[k])
    img = tuple(img)
    if isinstance(structure, Pretree):
        B = structure.table
        perm = np.array(img, dtype=np.intp)
        if len(img) and not np.array_equal(B[np.ix_(perm, perm, perm)], B):
            raise ModelFidelityError("induced map does not preserve betweenness")
    else:
        edges = {frozenset(e) for e in structure.edges}
        if {frozenset((img[i], img[j])) for i, j in structure.edges} != edges:
            raise ModelFidelityError("induced map does not preserve tree adjacency")
    return img


@dataclass
class OrbitReport:
    node_orbits: list[tuple[int, ...]]
    edge_orbits: list[tuple[tuple[int, int], ...]]
    node_stabilizers: dict[int, tuple[Perm, ...]]
    edge_stabilizers: dict[tuple[int, int], tuple[Perm, ...]]
    actions: dict[Perm, tuple[int, ...]] = field(repr=False)


def orbits_and_stabilizers(H: SymmetryGroup, T: DecompositionTree) -> OrbitReport:
    actions = {g: induced_action(g, T) for g in H.elements}
    m = len(T.nodes)
    node_orbits = sorted({tuple(sorted({a[i] for a in actions.values()})) for i in range(m)})
    node_stab = {
        orb[0]: tuple(g for g, a in actions.items() if a[orb[0]] == orb[0]) for orb in node_orbits
    }
    edges = [tuple(sorted(e)) for e in T.edges]
    edge_orbit_set = set()
    for i, j in edges:
        orb = set()
        for g, a in actions.items():
            if a[i] == j and a[j] == i:
                raise ModelFidelityError(
                    f"{list(g)} inverts the edge {T.nodes[i].label()}--{T.nodes[j].label()}"
                )
            orb.add(tuple(sorted((a[i], a[j]))))
        edge_orbit_set.add(tuple(sorted(orb)))
    edge_orbits = sorted(edge_orbit_set)
    edge_stab = {
        orb[0]: tuple(
            g for g, a in actions.items() if a[orb[0][0]] == orb[0][0] and a[orb[0][1]] == orb[0][1]
        )
        for orb in edge_orbits
    }
    return OrbitReport(node_orbits, edge_orbits, node_stab, edge_stab, actions)


@dataclass(frozen=True)
class GraphOfGroups:
    """Labeled graph; labels are opaque group identifiers.

    ``containments`` declares ``(smaller, larger)`` label pairs; containment
    is read as the reflexive-transitive closure of these declarations.
    ``payloads`` optionally maps a label to concrete group elements.
    """

    vertices: tuple[tuple[str, str], ...]
    edges: tuple[tuple[int, str, str, str], ...]
    containments: frozenset = frozenset()
    payloads: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        ids = [v for v, _ in self.vertices]
        if len(set(ids)) != len(ids):
            raise GraphError("duplicate vertex id in graph of groups")
        for eid, u, v, _ in self.edges:
            if u not in ids or v not in ids:
                raise GraphError(f"edge {eid} has an endpoint that is not a vertex")
        if ids and len(self._reach(ids[0])) != len(ids):
            raise GraphError("graph of groups must be connected")
        for eid, u, v, lab in self.edges:
            for end in (u, v):
                if not self.contained(lab, self.label(end)):
                    raise GraphError(
                        f"edge {eid} label {lab!r} is not declared contained in "
                        f"vertex {end!r} label {self.label(end)!r}"
                    )

    def _reach(self, start: str) -> set:
        adj: dict[str, set] = {v: set() for v, _ in self.vertices}
        for _, u, v, _ in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        seen = {start}
        stack = [start]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    def label(self, v: str) -> str:
        for vid, lab in self.vertices:
            if vid == v:
                return lab
        raise KeyError(v)

    def contained(self, small: str, big: str) -> bool:
        if small == big:
            return True
        seen = {small}
        stack = [small]
        while stack:
            a = stack.pop()
            for x, y in self.containments:
                if x == a and y not in seen:
                    if y == big:
                        return True
                    seen.add(y)
                    stack.append(y)
        return False

    def incident(self, v: str) -> list[tuple[int, str, str, str]]:
        return [e for e in self.edges if v in (e[1], e[2])]

    def shape(self) -> tuple:
        """Label-level invariant: sorted vertex labels and sorted labeled edge multiset."""
        return (
            tuple(sorted(lab for _, lab in self.vertices)),
            tuple(sorted((tuple(sorted((self.label(u), self.label(v)))), lab) for _, u, v, lab in self.edges)),
        )

    def to_json(self) -> dict:
        out = {
            "vertices": [{"id": v, "label": lab} for v, lab in self.vertices],
            "edges": [{"id": e, "u": u, "v": v, "label": lab} for e, u, v, lab in self.edges],
            "containments": sorted([list(c) for c in self.containments]),
        }
        if self.payloads:
            out["payloads"] = {k: [list(g) for g in els] for k, els in sorted(self.payloads.items())}
        return out

    @classmethod
    def from_json(cls, data: dict) -> "GraphOfGroups":
        try:
            vertices = tuple((str(v["id"]), str(v["label"])) for v in data["vertices"])
            edges = tuple(
                (int(e.get("id", i)), str(e["u"]), str(e["v"]), str(e["label"]))
                for i, e in enumerate(data["edges"])
            )
            cont = frozenset((str(a), str(b)) for a, b in data.get("containments", []))
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphError(f"malformed graph-of-groups JSON: {exc}") from None
        return cls(vertices, edges, cont)

    def to_dot(self, name: str = "gog") -> str:
        lines = [f"graph {name} {{"]
        for v, lab in self.vertices:
            lines.append(f'  "{v}" [label="{lab}"];')
        for _, u, v, lab in self.edges:
            lines.append(f'  "{u}" -- "{v}" [label="{lab}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _subgroup_labels(subgroups: Iterable[tuple[Perm, ...]]) -> dict[frozenset, str]:
    names: dict[frozenset, str] = {}
    for sub in subgroups:
        key = frozenset(sub)
        if key in names:
            continue
        if len(key) == 1:
            names[key] = "1"
        else:
            k = sum(1 for other in names if len(other) == len(key))
            names[key] = f"G{len(key)}" + (f"_{k}" if k else "")
    return names


def quotient_graph_of_groups(H: SymmetryGroup, T: DecompositionTree) -> GraphOfGroups:
    """Quotient ``T/H``: one vertex per node orbit, one edge per edge orbit,
    labeled by the stabilizers of orbit representatives."""
    rep = orbits_and_stabilizers(H, T)
    orbit_of = {i: orb[0] for orb in rep.node_orbits for i in orb}
    names = _subgroup_labels(
        [rep.node_stabilizers[o[0]] for o in rep.node_orbits]
        + [rep.edge_stabilizers[o[0]] for o in rep.edge_orbits]
    )
    vid = {o[0]: f"[{T.nodes[o[0]].label()}]" for o in rep.node_orbits}
    vertices = tuple((vid[o[0]], names[frozenset(rep.node_stabilizers[o[0]])]) for o in rep.node_orbits)
    edges = []
    containments = set()
    for k, orb in enumerate(rep.edge_orbits):
        i, j = orb[0]
        estab = set(rep.edge_stabilizers[orb[0]])
        elab = names[frozenset(estab)]
        for end in (i, j):
            r = orbit_of[end]
            g = next(g for g, a in rep.actions.items() if a[r] == end)
            conj = {compose(compose(g, s), inverse(g)) for s in rep.node_stabilizers[r]}
            if not estab <= conj:
                raise ModelFidelityError(
                    f"edge stabilizer is not contained in the stabilizer of {T.nodes[end].label()}"
                )
            vlab = names[frozenset(rep.node_stabilizers[r])]
            if vlab != elab:
                containments.add((elab, vlab))
        edges.append((k, vid[orbit_of[i]], vid[orbit_of[j]], elab))
    payloads = {name: tuple(sorted(sub)) for sub, name in names.items()}
    return GraphOfGroups(vertices, tuple(edges), frozenset(containments), payloads)


def refine(gamma: GraphOfGroups, v: str, delta: GraphOfGroups) -> GraphOfGroups:
    """Substitute vertex ``v`` of ``gamma`` by the decomposition ``delta``.

    Every edge at ``v`` is reattached to the first vertex of ``delta`` whose
    label is declared to contain the edge label.
    """
    if v not in {x for x, _ in gamma.vertices}:
        raise KeyError(v)
    cont = gamma.containments | delta.containments
    probe = GraphOfGroups((("_", "_"),), (), cont)
    rename = {d: f"{v}/{d}" for d, _ in delta.vertices}
    vertices = [(x, lab) for x, lab in gamma.vertices if x != v]
    vertices += [(rename[d], lab) for d, lab in delta.vertices]
    edges = []
    for eid, a, b, lab in gamma.edges:
        ends = []
        for end in (a, b):
            if end != v:
                ends.append(end)
                continue
            target = next((d for d, dl in delta.vertices if probe.contained(lab, dl)), None)
            if target is None:
                raise PreconditionError(
                    f"edge {eid} ({a}--{b}, label {lab!r}) is not contained in any vertex group "
                    f"of the decomposition of {v!r}"
                )
            ends.append(rename[target])
        edges.append((eid, ends[0], ends[1], lab))
    next_id = max((e[0] for e in gamma.edges), default=-1) + 1
    for k, (_, a, b, lab) in enumerate(delta.edges):
        edges.append((next_id + k, rename[a], rename[b], lab))
    return GraphOfGroups(tuple(vertices), tuple(edges), cont)


def non_reduced_vertices(gamma: GraphOfGroups) -> list[str]:
    """Vertices with at most two incident edges, no loop, every edge labeled by the vertex group."""
    out = []
    for v, lab in gamma.vertices:
        inc = gamma.incident(v)
        if len(inc) <= 2 and inc and all(e[1] != e[2] and e[3] == lab for e in inc):
            out.append(v)
    return out


def collapse_to_reduced(gamma: GraphOfGroups, trace: list | None = None) -> GraphOfGroups:
    """Contract non-loop edges whose label equals an endpoint's vertex group.

    The absorbed endpoint's other edges move to the surviving endpoint,
    which keeps its label.  Edges are visited in id order; when both
    endpoints qualify the larger vertex id is absorbed.  Every non-reduced
    vertex has such an edge, so the result is reduced.
    """
    while True:
        step = None
        for eid, a, b, lab in sorted(gamma.edges):
            if a == b:
                continue
            la, lb = gamma.label(a), gamma.label(b)
            if lab == la and lab == lb:
                keep, gone = (a, b) if a <= b else (b, a)
            elif lab == lb:
                keep, gone = a, b
            elif lab == la:
                keep, gone = b, a
            else:
                continue
            step = (eid, keep, gone)
            break
        if step is None:
            return gamma
        eid, keep, gone = step
        if trace is not None:
            trace.append({"edge": eid, "keep": keep, "absorbed": gone})
        edges = tuple(
            (e, keep if x == gone else x, keep if y == gone else y, lab)
            for e, x, y, lab in gamma.edges
            if e != eid
        )
        vertices = tuple((x, lab) for x, lab in gamma.vertices if x != gone)
        gamma = GraphOfGroups(vertices, edges, gamma.containments, gamma.payloads)


def check_nonnesting(H: SymmetryGroup, T: DecompositionTree) -> dict:
    """Scan every element and closed node interval for a strict self-nesting ``g(I) < I``."""
    m = len(T.nodes)
    intervals = []
    dist = [[T.distance(i, j) for j in range(m)] for i in range(m)]
    for i in range(m):
        for j in range(i, m):
            intervals.append(frozenset(k for k in range(m) if dist[i][k] + dist[k][j] == dist[i][j]))
    checked = 0
    for g in H.elements:
        a = induced_action(g, T)
        for I in intervals:
            checked += 1
            J = frozenset(a[k] for k in I)
            if J < I:
                return {
                    "passed": False,
                    "checked": checked,
                    "witness": {"element": list(g), "interval": sorted(T.nodes[k].label() for k in I)},
                }
    return {"passed": True, "checked": checked, "witness": None}
