"""Cut pairs, necklaces, inseparable sets and the JSJ tree of a 2-connected graph.

Separation by a cut pair ``{c, d}`` is vertex deletion: ``p`` and ``q`` (both
outside the pair) lie in different components of ``G - {c, d}``.  Adjacent
vertices are therefore never separated.

Maximality is decided by exhaustive subset search, which keeps the
construction identical to its definitions at the graph sizes this package
targets (a dozen vertices or so).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

import numpy as np

from .errors import ModelFidelityError, PreconditionError
from .graph import Graph, component_labels, cut_points, vertex_set
from .pretree import (
    MAX_INSEPARABLE,
    NECKLACE,
    PAIR,
    DecompositionTree,
    Pretree,
    PretreeElement,
    adjacent_pairs,
    canonical_cycle,
    realize_tree,
    validate_pretree,
)

__all__ = [
    "CyclicDecomposition",
    "Gap",
    "JsjAnalysis",
    "JsjReport",
    "is_inseparable_set",
    "cyclic_decomposition",
    "jsj_elements",
    "cyclic_order",
    "gaps",
    "jsj_tree",
    "jsj_report",
    "structure_findings",
]

_KIND_RANK = {NECKLACE: 0, PAIR: 1, MAX_INSEPARABLE: 2}


@dataclass(frozen=True)
class CyclicDecomposition:
    """Points ``x_1..x_n`` and parts ``M_1..M_n``; ``M_i`` runs from ``x_i`` to ``x_{i+1}``.

    For a cut pair (``n == 2``) the two parts meet in both points; this is the
    degenerate witness, not a decomposition in the ``n >= 3`` sense.
    """

    points: tuple[int, ...]
    parts: tuple[tuple[int, ...], ...]

    @property
    def degenerate(self) -> bool:
        return len(self.points) == 2

    def part_of(self, v: int) -> int:
        for i, part in enumerate(self.parts):
            if v in part and v not in self.points:
                return i
        raise KeyError(v)

    def to_json(self) -> dict:
        return {"points": list(self.points), "parts": [list(p) for p in self.parts]}


@dataclass(frozen=True)
class Gap:
    necklace: tuple[int, ...]
    interior: tuple[int, ...]
    boundary: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "necklace": list(self.necklace),
            "interior": list(self.interior),
            "boundary": list(self.boundary),
        }


def _require_biconnected(G: Graph) -> None:
    if G.n < 3 or cut_points(G):
        raise PreconditionError(
            "JSJ constructions need a 2-connected graph (>= 3 vertices, no cut point); "
            "split it with the cut-point tree first"
        )


class JsjAnalysis:
    """Cached separation data for one 2-connected graph."""

    def __init__(self, G: Graph):
        _require_biconnected(G)
        self.graph = G
        self.pair_labels = {
            (a, b): component_labels(G, (a, b)) for a, b in combinations(G.vertices, 2)
        }
        self.cut_pairs = [
            ab for ab, lab in self.pair_labels.items() if max(lab) >= 1
        ]
        self._insep = {}
        for p, q in combinations(G.vertices, 2):
            self._insep[(p, q)] = not any(
                self.pair_separates(c, d, p, q) for c, d in self.cut_pairs
            )
        self._cyclic_cache: dict[tuple[int, ...], CyclicDecomposition | None] = {}

    def pair_separates(self, c: int, d: int, p: int, q: int) -> bool:
        if p in (c, d) or q in (c, d):
            return False
        lab = self.pair_labels[(c, d) if c < d else (d, c)]
        return lab[p] != lab[q]

    def inseparable(self, p: int, q: int) -> bool:
        return p == q or self._insep[(p, q) if p < q else (q, p)]

    def is_inseparable_set(self, A: Iterable[int]) -> bool:
        return all(self.inseparable(p, q) for p, q in combinations(A, 2))

    def is_cycle_graph(self) -> bool:
        return all(len(self.graph.neighbors(v)) == 2 for v in self.graph.vertices)

    # -- cyclic sets -----------------------------------------------------

    def cyclic(self, S: Iterable[int]) -> CyclicDecomposition | None:
        S = vertex_set(S)
        if S not in self._cyclic_cache:
            self._cyclic_cache[S] = self._decompose(S)
        return self._cyclic_cache[S]

    def _decompose(self, S: tuple[int, ...]) -> CyclicDecomposition | None:
        G = self.graph
        if len(S) < 2:
            return None
        sset = set(S)
        labels = component_labels(G, S)
        comps: dict[int, list[int]] = {}
        for v in G.vertices:
            if labels[v] >= 0:
                comps.setdefault(labels[v], []).append(v)
        if len(S) == 2:
            if len(comps) < 2:
                return None
            a, b = S
            ordered = sorted(comps.values())
            first = tuple(sorted({a, b, *ordered[0]}))
            rest = tuple(sorted({a, b, *(v for c in ordered[1:] for v in c)}))
            return CyclicDecomposition(S, (first, rest))
        # Each component of G - S sits inside one part, so it must attach to
        # exactly the two consecutive points bounding that part.
        attached: dict[tuple[int, int], list[int]] = {}
        links: set[tuple[int, int]] = set()
        for comp in comps.values():
            att = sorted({w for v in comp for w in G.neighbors(v) if w in sset})
            if len(att) != 2:
                return None
            key = (att[0], att[1])
            links.add(key)
            attached.setdefault(key, []).extend(comp)
        for u, v in G.edges:
            if u in sset and v in sset:
                links.add((u, v))
        partners: dict[int, set[int]] = {s: set() for s in S}
        for u, v in links:
            partners[u].add(v)
            partners[v].add(u)
        if any(len(p) != 2 for p in partners.values()):
            return None
        start = S[0]
        order = [start, min(partners[start])]
        while len(order) < len(S):
            nxt = (partners[order[-1]] - {order[-2]}).pop()
            if nxt == start:
                return None  # link graph is a union of shorter cycles
            order.append(nxt)
        if start not in partners[order[-1]]:
            return None
        order = list(canonical_cycle(order))
        n = len(order)
        parts = []
        for i in range(n):
            a, b = order[i], order[(i + 1) % n]
            key = (a, b) if a < b else (b, a)
            parts.append(tuple(sorted({a, b, *attached.get(key, ())})))
        return CyclicDecomposition(tuple(order), tuple(parts))

    def cyclic_sets(self) -> list[tuple[int, ...]]:
        """All cyclic subsets with at least 3 points."""
        V = list(self.graph.vertices)
        return [S for k in range(3, len(V) + 1) for S in combinations(V, k) if self.cyclic(S)]

    def maximal_cyclic_sets(self) -> list[tuple[int, ...]]:
        sets = self.cyclic_sets()
        as_sets = [set(s) for s in sets]
        return [s for s, ss in zip(sets, as_sets) if not any(ss < t for t in as_sets)]

    # -- inseparable sets --------------------------------------------------

    def maximal_inseparable_sets(self) -> list[tuple[int, ...]]:
        """Maximal cliques (size >= 2) of the inseparability relation."""
        V = list(self.graph.vertices)
        nbr = {v: {u for u in V if u != v and self.inseparable(u, v)} for v in V}
        out: list[tuple[int, ...]] = []

        def expand(R: set, P: set, X: set):
            if not P and not X:
                if len(R) >= 2:
                    out.append(tuple(sorted(R)))
                return
            pivot = max(P | X, key=lambda u: len(nbr[u] & P))
            for v in sorted(P - nbr[pivot]):
                expand(R | {v}, P & nbr[v], X & nbr[v])
                P = P - {v}
                X = X | {v}

        expand(set(), set(V), set())
        return sorted(out)

    def inseparable_cut_pairs(self) -> list[tuple[int, int]]:
        return [ab for ab in self.cut_pairs if self.inseparable(*ab)]


def is_inseparable_set(G: Graph, A: Iterable[int]) -> bool:
    A = vertex_set(A)
    if len(A) < 2:
        raise PreconditionError("inseparable sets are non-degenerate: need at least 2 vertices")
    return JsjAnalysis(G).is_inseparable_set(A)


def cyclic_decomposition(G: Graph, S: Iterable[int]) -> CyclicDecomposition | None:
    S = vertex_set(S)
    if len(S) < 2:
        raise PreconditionError("cyclic sets have at least 2 points")
    return JsjAnalysis(G).cyclic(S)


def _elements(A: JsjAnalysis) -> list[PretreeElement]:
    V = tuple(A.graph.vertices)
    if A.is_cycle_graph():
        order = A.cyclic(V).points
        return [PretreeElement(NECKLACE, V, V, order)]
    if not A.cut_pairs:
        return [PretreeElement(MAX_INSEPARABLE, V)]
    pairs = A.inseparable_cut_pairs()
    elements = [PretreeElement(PAIR, ab) for ab in pairs]
    for S in A.maximal_cyclic_sets():
        if not A.is_inseparable_set(S):
            elements.append(PretreeElement(NECKLACE, S, S, A.cyclic(S).points))
    pairset = set(pairs)
    for S in A.maximal_inseparable_sets():
        if S not in pairset:
            elements.append(PretreeElement(MAX_INSEPARABLE, S))
    elements.sort(key=lambda e: (_KIND_RANK[e.kind], e.members))
    return elements


def _sides(A: JsjAnalysis, z: PretreeElement, elements: list[PretreeElement]) -> list:
    """For each element, the set of branches around ``z`` it occupies."""
    G = A.graph
    zset = set(z.members)
    labels = component_labels(G, z.members)
    if z.kind == PAIR:
        return [frozenset(labels[v] for v in w.members if v not in zset) for w in elements]
    attach: dict[int, frozenset] = {}
    for v in G.vertices:
        if labels[v] >= 0:
            attach.setdefault(labels[v], set()).update(u for u in G.neighbors(v) if u in zset)
    attach = {k: frozenset(s) for k, s in attach.items()}
    out = []
    for w in elements:
        keys = set()
        inside = zset.intersection(w.members)
        if len(inside) >= 2:
            keys.add(frozenset(inside))
        keys.update(attach[labels[v]] for v in w.members if v not in zset)
        out.append(frozenset(keys))
    return out


def _table(A: JsjAnalysis, elements: list[PretreeElement]) -> np.ndarray:
    m = len(elements)
    table = np.zeros((m, m, m), dtype=bool)
    for z, ez in enumerate(elements):
        sides = _sides(A, ez, elements)
        for x in range(m):
            if x == z or not sides[x]:
                continue
            for y in range(x + 1, m):
                if y != z and sides[y] and not (sides[x] & sides[y]):
                    table[x, y, z] = table[y, x, z] = True
    return table


def jsj_elements(G: Graph, validate: bool = True) -> Pretree:
    """Necklaces, inseparable cut pairs and maximal inseparable sets with betweenness.

    ``z`` lies between ``x`` and ``y`` when ``x`` and ``y`` occupy disjoint
    sets of branches at ``z``: components of ``G - z`` for a cut pair;
    for a larger element, the attachment set of each component of ``G - z``
    and the overlap with ``z`` itself when it has two or more vertices.
    """
    return _pretree(JsjAnalysis(G), validate)


def _pretree(A: JsjAnalysis, validate: bool = True) -> Pretree:
    elements = _elements(A)
    P = Pretree(tuple(elements), _table(A, elements))
    if validate:
        rep = validate_pretree(P)
        if not rep.passed:
            raise ModelFidelityError("JSJ betweenness violates the pretree axioms", rep.witnesses)
    return P


def cyclic_order(G: Graph, necklace: Iterable[int], check: bool = True) -> tuple[int, ...]:
    """Canonical circular order of a necklace (least vertex first, lesser neighbour second).

    With ``check`` every subset of four or more necklace points is decomposed
    and its order compared with the induced order.
    """
    A = JsjAnalysis(G)
    N = vertex_set(necklace)
    dec = A.cyclic(N)
    if dec is None or len(N) < 3:
        raise PreconditionError(f"{list(N)} is not a cyclic set with at least 3 points")
    order = dec.points
    if check:
        pos = {v: i for i, v in enumerate(order)}
        for k in range(4, len(N)):
            for sub in combinations(N, k):
                d = A.cyclic(sub)
                induced = canonical_cycle(sorted(sub, key=pos.get))
                if d is None or d.points != induced:
                    raise ModelFidelityError(
                        f"subset {sub} of necklace {N} disagrees with its cyclic order",
                        witness=sub,
                    )
    return order


def gaps(G: Graph, necklace: Iterable[int]) -> list[Gap]:
    """Gaps of a necklace: classes of vertices off the necklace that no cyclic
    decomposition by necklace points pulls apart, with their attaching points."""
    return _gaps(JsjAnalysis(G), vertex_set(necklace))


def _gaps(A: JsjAnalysis, N: tuple[int, ...]) -> list[Gap]:
    G = A.graph
    rest = [v for v in G.vertices if v not in N]
    if not rest:
        return []
    # signature[v] = which part of each decomposition v falls in
    signature: dict[int, list] = {v: [] for v in rest}
    for k in range(2, len(N) + 1):
        for sub in combinations(N, k):
            dec = A.cyclic(sub)
            if dec is None:
                continue
            if dec.degenerate:
                lab = A.pair_labels[sub]
                for v in rest:
                    signature[v].append(lab[v])
            else:
                for v in rest:
                    signature[v].append(dec.part_of(v))
    classes: dict[tuple, list[int]] = {}
    for v in rest:
        classes.setdefault(tuple(signature[v]), []).append(v)
    out = []
    nset = set(N)
    for interior in sorted(classes.values()):
        boundary = sorted({u for v in interior for u in G.neighbors(v) if u in nset})
        out.append(Gap(N, tuple(interior), tuple(boundary)))
    return out


def jsj_tree(G: Graph, trim: bool = True) -> DecompositionTree:
    """JSJ tree; ``trim`` removes terminal elements before gluing (may leave it empty)."""
    return realize_tree(jsj_elements(G), trim=trim)


def structure_findings(A: JsjAnalysis, P: Pretree) -> list[tuple]:
    """Deviations from the intersection and adjacency properties of JSJ elements.

    * distinct elements meet in at most two vertices; a two-vertex overlap is
      an inseparable cut pair, or an edge class lying inside a necklace
    * a cut pair contained in a larger element is adjacent to it
    * any other adjacent pair is a necklace and a maximal inseparable set
      sharing at least two vertices
    """
    out = []
    els = P.elements
    pairs = set(A.inseparable_cut_pairs())
    for i, j in combinations(range(len(els)), 2):
        a, b = els[i], els[j]
        meet = tuple(sorted(set(a.members) & set(b.members)))
        if len(meet) > 2:
            out.append(("intersection", a.label(), b.label(), meet))
        elif len(meet) == 2 and meet not in pairs:
            small, big = (a, b) if len(a.members) <= len(b.members) else (b, a)
            edge_class = (
                small.kind == MAX_INSEPARABLE
                and small.members == meet
                and big.kind == NECKLACE
            )
            if not edge_class:
                out.append(("intersection", a.label(), b.label(), meet))
    adj = set(adjacent_pairs(P))
    for i, j in combinations(range(len(els)), 2):
        a, b = els[i], els[j]
        contained = (a.kind == PAIR and set(a.members) < set(b.members)) or (
            b.kind == PAIR and set(b.members) < set(a.members)
        )
        if contained and (i, j) not in adj:
            out.append(("pair-not-adjacent", a.label(), b.label()))
        if (i, j) in adj and not contained:
            kinds = {a.kind, b.kind}
            overlap = len(set(a.members) & set(b.members))
            if kinds != {NECKLACE, MAX_INSEPARABLE} or overlap < 2:
                out.append(("unexpected-adjacency", a.label(), b.label()))
    return out


@dataclass
class JsjReport:
    pretree: Pretree
    gaps: list[Gap]
    tree: DecompositionTree
    trim: bool
    findings: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "elements": [e.to_json() for e in self.pretree.elements],
            "gaps": [g.to_json() for g in self.gaps],
            "tree": self.tree.to_json(),
            "trim": self.trim,
            "findings": [list(map(str, f)) for f in self.findings],
        }


def jsj_report(G: Graph, trim: bool = True) -> JsjReport:
    A = JsjAnalysis(G)
    P = _pretree(A)
    gap_list = [g for e in P.elements if e.kind == NECKLACE for g in _gaps(A, e.members)]
    return JsjReport(P, gap_list, realize_tree(P, trim=trim), trim, structure_findings(A, P))
