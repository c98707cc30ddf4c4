"""Cut-point pretree of a finite graph and its cut-point tree.

Elements are the cut vertices and the inseparable classes.  Two non-cut
vertices are equivalent when no cut vertex separates them; each class is
carried together with its block (the class plus the cut vertices in its
closure).  A block made only of cut vertices still contributes a class with
an empty vertex payload: its points are the interiors of the block's edges,
which a vertex-only model cannot name.
"""
from __future__ import annotations

from itertools import combinations

import numpy as np

from .errors import ModelFidelityError
from .graph import Graph, component_labels, cut_points
from .pretree import (
    CLASS,
    CUT_POINT,
    DecompositionTree,
    Pretree,
    PretreeElement,
    adjacent_pairs,
    realize_tree,
    terminal,
)

__all__ = [
    "CutPointAnalysis",
    "inseparable_classes",
    "cut_point_pretree",
    "classify_relation",
    "adjacency_findings",
    "build_cutpoint_tree",
    "between_literal",
]


class CutPointAnalysis:
    """Separation data shared by the class construction and the betweenness table."""

    def __init__(self, G: Graph):
        self.graph = G
        self.cuts = cut_points(G)
        self.labels = {c: component_labels(G, (c,)) for c in self.cuts}

    def cut_separates(self, c: int, a: int, b: int) -> bool:
        if c == a or c == b:
            return False
        lab = self.labels[c]
        return lab[a] != lab[b]

    def open_interval(self, a: int, b: int) -> set[int]:
        """Vertices ``t`` with ``a`` and ``b`` in distinct components of ``G - t``."""
        return {c for c in self.cuts if self.cut_separates(c, a, b)}

    def equivalence_classes(self) -> list[tuple[int, ...]]:
        cutset = set(self.cuts)
        rest = [v for v in self.graph.vertices if v not in cutset]
        related = {
            (a, b): not self.open_interval(a, b) for a, b in combinations(rest, 2)
        }

        def rel(a, b):
            return a == b or related[(a, b) if a < b else (b, a)]

        for a, b, c in combinations(rest, 3):
            for p, q, r in ((a, b, c), (a, c, b), (b, a, c)):
                if rel(p, q) and rel(q, r) and not rel(p, r):
                    raise ModelFidelityError(
                        f"equivalence of non-cut points is not transitive at {(p, q, r)}",
                        witness=(p, q, r),
                    )
        classes: list[tuple[int, ...]] = []
        placed: set[int] = set()
        for a in rest:
            if a in placed:
                continue
            cls = tuple(b for b in rest if rel(a, b))
            placed.update(cls)
            classes.append(cls)
        return classes

    def blocks(self) -> list[tuple[int, ...]]:
        G = self.graph
        if G.n == 1:
            return [(0,)]
        found = set()
        for u, v in G.sorted_edges():
            block = {u, v}
            for w in G.vertices:
                if w in block:
                    continue
                if not any(
                    self.cut_separates(c, w, u) or self.cut_separates(c, w, v)
                    for c in self.cuts
                ):
                    block.add(w)
            found.add(tuple(sorted(block)))
        return sorted(found)


def inseparable_classes(G: Graph) -> Pretree:
    """Cut-point pretree: one element per cut vertex plus one class per block."""
    return _build(CutPointAnalysis(G))


cut_point_pretree = inseparable_classes


def _build(A: CutPointAnalysis) -> Pretree:
    cutset = set(A.cuts)
    blocks = A.blocks()
    interiors = {tuple(v for v in b if v not in cutset): b for b in blocks}
    for cls in A.equivalence_classes():
        if cls not in interiors:
            raise ModelFidelityError(
                f"class {cls} is not the interior of a single block", witness=cls
            )
    elements = [PretreeElement(CUT_POINT, (c,)) for c in A.cuts]
    elements += [
        PretreeElement(CLASS, tuple(v for v in b if v not in cutset), b) for b in blocks
    ]
    return Pretree(tuple(elements), _table(A, elements))


def _gate(A: CutPointAnalysis, block: tuple[int, ...], w: PretreeElement) -> int:
    """The vertex of ``block`` through which element ``w`` attaches to it."""
    if w.kind == CUT_POINT and w.members[0] in block:
        return w.members[0]
    bset = set(block)
    r = min(v for v in w.closure if v not in bset)
    for b in block:
        if b not in A.labels:
            continue
        other = next(o for o in block if o != b)
        if A.cut_separates(b, r, other):
            return b
    raise ModelFidelityError(f"no gate from {w.label()} into block {block}", witness=(w.label(), block))


def _table(A: CutPointAnalysis, elements: list[PretreeElement]) -> np.ndarray:
    m = len(elements)
    table = np.zeros((m, m, m), dtype=bool)
    for z, ez in enumerate(elements):
        if ez.kind == CUT_POINT:
            c = ez.members[0]
            lab = A.labels[c]
            side = [
                None if i == z else lab[min(v for v in e.closure if v != c)]
                for i, e in enumerate(elements)
            ]
        else:
            side = [None if i == z else _gate(A, ez.closure, e) for i, e in enumerate(elements)]
        for x in range(m):
            if x == z:
                continue
            for y in range(m):
                if y != z and y != x and side[x] != side[y]:
                    table[x, y, z] = True
    return table


def between_literal(G: Graph, P: Pretree, x, y, z) -> bool:
    """Representative-wise test ``[a,c) & (c,b] == {}`` over all a in x, b in y, c in z.

    Vertex intervals are decided by single-vertex separation.  Only the
    element payloads (not block closures) are scanned, so classes with an
    empty payload are vacuously between everything.  Kept for comparison:
    on graphs where a block holds three or more cut vertices this relation
    breaks the pretree axioms, and :func:`inseparable_classes` uses the
    block-gate relation instead.
    """
    A = CutPointAnalysis(G)
    ex, ey, ez = (P.elements[P.index(e)] for e in (x, y, z))
    for a in ex.members:
        for b in ey.members:
            for c in ez.members:
                left = {a} | A.open_interval(a, c)
                right = {b} | A.open_interval(c, b)
                if a == c:
                    left = set()
                if b == c:
                    right = set()
                if left & right:
                    return False
    return True


def classify_relation(P: Pretree, x, y) -> str:
    i, j = P.index(x), P.index(y)
    if i == j:
        raise ValueError("relation is classified between distinct elements")
    return "non-adjacent" if P.table[i, j].any() else "adjacent"


def adjacency_findings(P: Pretree) -> list[tuple[str, str, str]]:
    """Adjacent pairs that break the cut-point adjacency lemma.

    Every adjacent pair must consist of exactly one cut point and one class
    whose closure is a nonsingleton set containing that cut point.
    """
    out = []
    for i, j in adjacent_pairs(P):
        a, b = P.elements[i], P.elements[j]
        kinds = {a.kind, b.kind}
        if kinds != {CUT_POINT, CLASS}:
            out.append((a.label(), b.label(), "not exactly one cut point"))
            continue
        cut, cls = (a, b) if a.kind == CUT_POINT else (b, a)
        if len(cls.closure) < 2 or cut.members[0] not in cls.closure:
            out.append((a.label(), b.label(), "class closure misses the cut point"))
    return out


def is_terminal(P: Pretree, x) -> bool:
    return terminal(P, x)


def build_cutpoint_tree(G: Graph, trim: bool = False) -> DecompositionTree:
    """The cut-point tree: adjacent elements joined by unit-length edges.

    ``trim=True`` removes terminal elements before gluing.
    """
    return realize_tree(inseparable_classes(G), trim=trim)
