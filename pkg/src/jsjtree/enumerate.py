"""Labeled enumeration of small connected graphs and their automorphisms."""
from __future__ import annotations

from itertools import combinations
from typing import Iterator

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from .errors import GraphError
from .graph import Graph, is_biconnected

__all__ = ["connected_graphs", "biconnected_graphs", "automorphisms", "to_networkx"]


def _is_connected(n: int, edges) -> bool:
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    parts = n
    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            parts -= 1
    return parts == 1


def connected_graphs(n: int) -> Iterator[Graph]:
    """Every labeled connected simple graph on exactly ``n`` vertices.

    Edge subsets are visited in binary order of the lexicographic edge list,
    so the sequence is deterministic.
    """
    if n < 1:
        raise GraphError("n must be positive")
    slots = list(combinations(range(n), 2))
    for mask in range(1 << len(slots)):
        edges = [slots[i] for i in range(len(slots)) if mask >> i & 1]
        if len(edges) >= n - 1 and _is_connected(n, edges):
            yield Graph(n, edges)


def biconnected_graphs(n: int) -> Iterator[Graph]:
    for G in connected_graphs(n):
        if is_biconnected(G):
            yield G


def to_networkx(G: Graph) -> nx.Graph:
    H = nx.Graph()
    H.add_nodes_from(G.vertices)
    H.add_edges_from(G.edges)
    return H


def automorphisms(G: Graph) -> list[tuple[int, ...]]:
    """All automorphisms as image tuples, sorted lexicographically (identity first)."""
    H = to_networkx(G)
    out = {tuple(m[v] for v in G.vertices) for m in GraphMatcher(H, H).isomorphisms_iter()}
    return sorted(out)
