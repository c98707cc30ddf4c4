"""Finite pretrees: elements, a betweenness table, validation and tree realization.

The betweenness relation is stored densely as a boolean array ``table`` with
``table[x, y, z]`` true iff element ``z`` lies in the open interval ``(x, y)``.
Every check below is an exhaustive scan of that table.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import ModelFidelityError

__all__ = [
    "PretreeElement",
    "Pretree",
    "DecompositionTree",
    "ValidationReport",
    "between",
    "interval",
    "adjacent",
    "terminal",
    "validate_pretree",
    "realize_tree",
    "tree_betweenness",
]

CUT_POINT = "cut"
CLASS = "class"
NECKLACE = "necklace"
PAIR = "pair"
MAX_INSEPARABLE = "insep"

KINDS = (CUT_POINT, CLASS, NECKLACE, PAIR, MAX_INSEPARABLE)


@dataclass(frozen=True, order=True)
class PretreeElement:
    """One point of a pretree.

    ``members`` is the vertex payload.  ``closure`` is the vertex set the
    element occupies in the graph: for an inseparable class it is the whole
    block (cut vertices included), for every other kind it equals
    ``members``.  ``order`` is the canonical cyclic order of a necklace.
    """

    kind: str
    members: tuple[int, ...]
    closure: tuple[int, ...] = ()
    order: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown pretree element kind {self.kind!r}")
        object.__setattr__(self, "members", tuple(sorted(self.members)))
        object.__setattr__(self, "closure", tuple(sorted(self.closure or self.members)))

    @property
    def key(self) -> tuple:
        return (self.kind, self.members, self.closure)

    def label(self) -> str:
        if self.kind == CUT_POINT:
            return f"cut:{self.members[0]}"
        if self.kind == CLASS:
            inner = ",".join(map(str, self.members))
            if self.members:
                return f"class:{{{inner}}}"
            return "class:{}[" + ",".join(map(str, self.closure)) + "]"
        if self.kind == NECKLACE:
            return "necklace:(" + ",".join(map(str, self.order or self.members)) + ")"
        return f"{self.kind}:{{" + ",".join(map(str, self.members)) + "}"

    def image(self, perm: Sequence[int]) -> "PretreeElement":
        """Pointwise image under a vertex permutation (cyclic order re-canonicalized)."""
        order = ()
        if self.order:
            order = canonical_cycle([perm[v] for v in self.order])
        return PretreeElement(
            self.kind,
            tuple(perm[v] for v in self.members),
            tuple(perm[v] for v in self.closure),
            order,
        )

    def to_json(self) -> dict:
        out = {"kind": self.kind, "members": list(self.members)}
        if self.closure != self.members:
            out["closure"] = list(self.closure)
        if self.order:
            out["cyclic_order"] = list(self.order)
        return out


def canonical_cycle(seq: Sequence[int]) -> tuple[int, ...]:
    """Rotate/reflect a circular sequence: least vertex first, lesser neighbour second."""
    seq = list(seq)
    if len(seq) < 3:
        return tuple(sorted(seq))
    i = seq.index(min(seq))
    seq = seq[i:] + seq[:i]
    if seq[-1] < seq[1]:
        seq = [seq[0]] + seq[:0:-1]
    return tuple(seq)


@dataclass(frozen=True)
class Pretree:
    elements: tuple[PretreeElement, ...]
    table: np.ndarray = field(repr=False, compare=False)

    def __post_init__(self):
        m = len(self.elements)
        if self.table.shape != (m, m, m):
            raise ValueError("betweenness table shape does not match the element count")
        self.table.setflags(write=False)

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, x) -> int:
        if isinstance(x, (int, np.integer)):
            return int(x)
        try:
            return self.elements.index(x)
        except ValueError:
            raise KeyError(f"{x.label() if hasattr(x, 'label') else x!r} is not an element") from None

    def restrict(self, keep: Sequence[int]) -> "Pretree":
        keep = list(keep)
        sub = self.table[np.ix_(keep, keep, keep)].copy()
        return Pretree(tuple(self.elements[i] for i in keep), sub)


def between(P: Pretree, x, y, z) -> bool:
    """``z`` in the open interval ``(x, y)``."""
    return bool(P.table[P.index(x), P.index(y), P.index(z)])


def interval(P: Pretree, x, y) -> list[PretreeElement]:
    """The closed interval ``[x, y]`` listed in the linear order starting at ``x``."""
    i, j = P.index(x), P.index(y)
    if i == j:
        return [P.elements[i]]
    inner = np.flatnonzero(P.table[i, j])
    # |[x, u]| strictly increases along the order from x.
    inner = sorted(inner, key=lambda u: int(P.table[i, u].sum()))
    return [P.elements[i]] + [P.elements[u] for u in inner] + [P.elements[j]]


def adjacent(P: Pretree, x, y) -> bool:
    i, j = P.index(x), P.index(y)
    if i == j:
        raise ValueError("adjacency is only defined for distinct elements")
    return not P.table[i, j].any()


def terminal(P: Pretree, x) -> bool:
    """``x`` lies in no open interval of ``P``."""
    return not P.table[:, :, P.index(x)].any()


def adjacent_pairs(P: Pretree) -> list[tuple[int, int]]:
    m = len(P)
    nonempty = P.table.any(axis=2)
    return [(i, j) for i in range(m) for j in range(i + 1, m) if not nonempty[i, j]]


@dataclass
class ValidationReport:
    checks: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def record(self, name: str, witness) -> None:
        self.checks[name] = witness is None
        if witness is not None:
            self.witnesses[name] = witness

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "checks": dict(self.checks),
            "witnesses": {k: list(map(str, v)) for k, v in self.witnesses.items()},
        }


def _first(mask: np.ndarray):
    hits = np.argwhere(mask)
    return None if len(hits) == 0 else tuple(int(i) for i in hits[0])


def validate_pretree(P: Pretree) -> ValidationReport:
    """Exhaustively check the pretree axioms and the finite interval lemmas.

    Checks, each over every triple or quadruple of elements:

    * ``symmetric``: (x,y) = (y,x)
    * ``endpoints_excluded``: x not in (x,y), and (x,x) is empty
    * ``asymmetric``: z in (x,y) implies x not in (z,y)
    * ``transitive``: z in (x,y) and w in (x,z) imply w in (x,y)
    * ``interval_monotone``: y in [x,z] implies [x,y] subset of [x,z]
    * ``linear_order``: the order on [x,y] by distance from x is total and
      reproduces the open intervals inside [x,y]
    * ``nested_union``: the union of a chain of intervals [x,a] is an interval
    * ``supremum``: every subset of [x,y] has a supremum in that interval

    Failures are returned as witnesses (element labels), never raised.
    """
    B = np.asarray(P.table, dtype=bool)
    m = len(P)
    rep = ValidationReport()
    labels = [e.label() for e in P.elements]

    def wit(idx):
        return None if idx is None else tuple(labels[i] for i in idx)

    rep.record("symmetric", wit(_first(B != B.transpose(1, 0, 2))))
    ar = np.arange(m)
    bad = None
    if m:
        hit = _first(B[ar, :, ar])  # x in (x, y)
        if hit is not None:
            bad = (hit[0], hit[1], hit[0])
        else:
            hit = _first(B[ar, ar, :])  # (x, x) nonempty
            bad = None if hit is None else (hit[0], hit[0], hit[1])
    rep.record("endpoints_excluded", wit(bad))
    # B[x, y, z] & B[z, y, x]
    rep.record("asymmetric", wit(_first(B & B.transpose(2, 1, 0))))

    bad = None
    for x in range(m):
        M = B[x].astype(np.int32)
        reach = (M @ M) > 0  # exists z: z in (x,y) and w in (x,z)
        hit = _first(reach & ~B[x])
        if hit is not None:
            y, w = hit
            z = int(np.flatnonzero(B[x, y] & B[x, :, w])[0])
            bad = (x, y, z, w)
            break
    rep.record("transitive", wit(bad))

    closed = B.copy()
    closed[ar, :, ar] = True
    closed[:, ar, ar] = True
    bad = None
    for x in range(m):
        for z in range(m):
            for y in np.flatnonzero(closed[x, z]):
                if (closed[x, y] & ~closed[x, z]).any():
                    bad = (x, z, int(y))
                    break
            if bad:
                break
        if bad:
            break
    rep.record("interval_monotone", wit(bad))

    bad = None
    for x in range(m):
        for y in range(m):
            members = np.flatnonzero(closed[x, y])
            pos = {int(u): int(closed[x, u].sum()) for u in members}
            if len(set(pos.values())) != len(members):
                bad = (x, y)
                break
            ranked = sorted(pos, key=pos.get)
            for a in range(len(ranked)):
                for b in range(a + 1, len(ranked)):
                    z, w = ranked[a], ranked[b]
                    expect = np.zeros(m, dtype=bool)
                    expect[ranked[a + 1 : b]] = True
                    if (B[z, w] != expect).any():
                        bad = (x, y, z, w)
                        break
                if bad:
                    break
            if bad:
                break
        if bad:
            break
    rep.record("linear_order", wit(bad))

    # Finite chains: the union of the nested family {[x,a]} over a chain is its
    # largest member, so nested unions and suprema reduce to chain checks.
    interval_sets = {closed[x, y].tobytes() for x in range(m) for y in range(m)}
    bad_nested = None
    bad_sup = None
    for x in range(m):
        for y in range(m):
            chain = [closed[x, int(a)] for a in np.flatnonzero(closed[x, y])]
            chain.sort(key=lambda s: int(s.sum()))
            for a, b in zip(chain, chain[1:]):
                if (a & ~b).any():
                    bad_nested = bad_nested or (x, y)
            union = np.logical_or.reduce(chain) if chain else np.zeros(m, bool)
            if union.tobytes() not in interval_sets:
                bad_nested = bad_nested or (x, y)
            if chain and (union != closed[x, y]).any():
                bad_sup = bad_sup or (x, y)
    rep.record("nested_union", wit(bad_nested))
    rep.record("supremum", wit(bad_sup))
    return rep


@dataclass(frozen=True)
class DecompositionTree:
    """Finite tree whose nodes are pretree elements; every edge has length 1."""

    nodes: tuple[PretreeElement, ...]
    edges: tuple[tuple[int, int], ...]
    dropped: tuple[PretreeElement, ...] = ()

    def __post_init__(self):
        n = len(self.nodes)
        if n and len(self.edges) != n - 1:
            raise ModelFidelityError(
                f"adjacency graph has {len(self.edges)} edges on {n} nodes: not a tree",
                witness=[self.nodes[i].label() + "--" + self.nodes[j].label() for i, j in self.edges],
            )
        if n and len(_tree_bfs(n, self.edges, 0)) != n:
            raise ModelFidelityError("adjacency graph is disconnected: not a tree")

    def __len__(self) -> int:
        return len(self.nodes)

    def index(self, element: PretreeElement) -> int:
        return self.nodes.index(element)

    def labeled_edges(self) -> set[frozenset]:
        return {frozenset((self.nodes[i].key, self.nodes[j].key)) for i, j in self.edges}

    def distance(self, i: int, j: int) -> int:
        return _tree_bfs(len(self.nodes), self.edges, i)[j]

    def to_json(self) -> dict:
        return {
            "nodes": [e.to_json() for e in self.nodes],
            "edges": [list(e) for e in self.edges],
            "edge_length": 1,
        }

    def to_dot(self, name: str = "tree") -> str:
        lines = [f"graph {name} {{"]
        for i, e in enumerate(self.nodes):
            lines.append(f'  n{i} [label="{e.label()}"];')
        for i, j in self.edges:
            lines.append(f"  n{i} -- n{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _tree_bfs(n: int, edges: Iterable[tuple[int, int]], root: int) -> dict[int, int]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
    dist = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def realize_tree(P: Pretree, trim: bool = False) -> DecompositionTree:
    """Glue a unit interval between every pair of adjacent elements.

    With ``trim`` the terminal elements are removed first and adjacency is
    recomputed in the remaining pretree.
    """
    keep = list(range(len(P)))
    dropped: tuple[PretreeElement, ...] = ()
    if trim:
        keep = [i for i in keep if not terminal(P, i)]
        dropped = tuple(P.elements[i] for i in range(len(P)) if i not in keep)
        P = P.restrict(keep)
    return DecompositionTree(P.elements, tuple(adjacent_pairs(P)), dropped)


def tree_betweenness(T: DecompositionTree) -> np.ndarray:
    """Betweenness table read off tree paths: ``z`` is an interior vertex of the x-y path."""
    m = len(T.nodes)
    dist = [_tree_bfs(m, T.edges, i) for i in range(m)]
    D = np.array([[dist[i][j] for j in range(m)] for i in range(m)], dtype=np.int64).reshape(m, m)
    table = np.zeros((m, m, m), dtype=bool)
    for x in range(m):
        for y in range(m):
            on_path = D[x] + D[:, y] == D[x, y]
            on_path[x] = on_path[y] = False
            table[x, y] = on_path
    return table
