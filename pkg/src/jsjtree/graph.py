"""Finite simple connected graphs and vertex-removal separation oracles.

A finite connected graph stands in for a continuum.  A "component of Z - S"
is a connected component of the graph after deleting the vertex set ``S``;
deleted vertices never belong to a component.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import GraphError, PreconditionError

__all__ = [
    "Graph",
    "SeparationReport",
    "vertex_set",
    "component_labels",
    "components_after_removal",
    "is_cut_point",
    "is_cut_pair",
    "separates",
    "cut_points",
    "cut_pairs",
    "is_biconnected",
]

VertexSet = tuple  # sorted tuple of ints


def vertex_set(vs: Iterable[int]) -> tuple[int, ...]:
    """Canonical (sorted, deduplicated) representation of a vertex subset."""
    return tuple(sorted(set(int(v) for v in vs)))


@dataclass(frozen=True)
class Graph:
    """Simple connected undirected graph on vertices ``0..n-1``.

    Construction rejects loops, duplicate edges, out-of-range endpoints and
    disconnected inputs with a :class:`GraphError` naming the violation.
    """

    n: int
    edges: frozenset = field(default_factory=frozenset)
    adjacency: tuple = field(init=False, repr=False, compare=False)

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise GraphError(f"graph must have n >= 1 vertices, got {n!r}")
        seen: set[tuple[int, int]] = set()
        for e in edges:
            if len(e) != 2:
                raise GraphError(f"edge {list(e)!r} does not have two endpoints")
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"loop at vertex {u}: graphs must be simple")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise GraphError(f"duplicate edge {key}: graphs must be simple")
            seen.add(key)
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in seen:
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(seen))
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(a)) for a in adj))
        if len(_components(self, ())) != 1:
            raise GraphError("graph is disconnected: the model continuum must be connected")

    @property
    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self.edges])

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}

    @classmethod
    def from_json(cls, data: dict) -> "Graph":
        if not isinstance(data, dict) or "n" not in data or "edges" not in data:
            raise GraphError('graph JSON must be an object with keys "n" and "edges"')
        if not isinstance(data["edges"], list):
            raise GraphError('"edges" must be a list of [u, v] pairs')
        return cls(data["n"], data["edges"])

    # A few named graphs used throughout the tests and demos.
    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise GraphError("a simple cycle needs at least 3 vertices")
        return cls(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


@dataclass(frozen=True)
class SeparationReport:
    removed: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {"removed": list(self.removed), "components": [list(c) for c in self.components]}


def _check_vertices(G: Graph, vs: Iterable[int], what: str = "vertex") -> None:
    for v in vs:
        if not (isinstance(v, int) and 0 <= v < G.n):
            raise GraphError(f"{what} {v!r} is outside the vertex range 0..{G.n - 1}")


def _components(G: Graph, removed: Iterable[int]) -> list[tuple[int, ...]]:
    gone = set(removed)
    seen = set(gone)
    out = []
    for s in range(G.n):
        if s in seen:
            continue
        seen.add(s)
        block = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in G.adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    block.append(w)
                    queue.append(w)
        out.append(tuple(sorted(block)))
    return out


def component_labels(G: Graph, removed: Iterable[int]) -> list[int]:
    """Component index per vertex after deleting ``removed`` (-1 for deleted)."""
    labels = [-1] * G.n
    for i, comp in enumerate(_components(G, removed)):
        for v in comp:
            labels[v] = i
    return labels


def components_after_removal(G: Graph, S: Iterable[int]) -> SeparationReport:
    """Partition ``V - S`` into maximal connected blocks, sorted by least vertex."""
    S = vertex_set(S)
    _check_vertices(G, S)
    return SeparationReport(S, tuple(_components(G, S)))


def is_cut_point(G: Graph, c: int) -> bool:
    _check_vertices(G, [c])
    if G.n < 2:
        raise PreconditionError("cut points are only defined for graphs with at least 2 vertices")
    return len(_components(G, (c,))) >= 2


def cut_points(G: Graph) -> tuple[int, ...]:
    if G.n < 2:
        return ()
    return tuple(c for c in G.vertices if len(_components(G, (c,))) >= 2)


def is_biconnected(G: Graph) -> bool:
    """True when ``G`` has at least 3 vertices and no cut point."""
    return G.n >= 3 and not cut_points(G)


def is_cut_pair(G: Graph, pair: Iterable[int]) -> bool:
    a, b = _pair(G, pair)
    if cut_points(G):
        raise PreconditionError(
            "cut pairs are defined for graphs without cut points; "
            "decompose into blocks (cut-point tree) first"
        )
    return len(_components(G, (a, b))) >= 2


def cut_pairs(G: Graph) -> list[tuple[int, int]]:
    """All cut pairs of a graph with no cut points, lexicographically sorted."""
    return [
        (a, b)
        for a in range(G.n)
        for b in range(a + 1, G.n)
        if len(_components(G, (a, b))) >= 2
    ]


def separates(G: Graph, S: Iterable[int], p: int, q: int) -> bool:
    """True iff ``p`` and ``q`` lie in different components of ``G - S``."""
    S = vertex_set(S)
    _check_vertices(G, S)
    _check_vertices(G, [p, q])
    if p in S or q in S:
        raise GraphError(f"separated vertices must lie outside the removed set {list(S)}")
    labels = component_labels(G, S)
    return labels[p] != labels[q]


def _pair(G: Graph, pair: Iterable[int]) -> tuple[int, int]:
    ab = vertex_set(pair)
    _check_vertices(G, ab)
    if len(ab) != 2:
        raise PreconditionError(f"a cut pair needs two distinct vertices, got {list(pair)}")
    return ab[0], ab[1]
