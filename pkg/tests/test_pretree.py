import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jsjtree.errors import ModelFidelityError
from jsjtree.pretree import (
    CUT_POINT,
    NECKLACE,
    DecompositionTree,
    Pretree,
    PretreeElement,
    adjacent,
    canonical_cycle,
    interval,
    realize_tree,
    terminal,
    tree_betweenness,
    validate_pretree,
)


def points(m):
    return tuple(PretreeElement(CUT_POINT, (i,)) for i in range(m))


def line_pretree(m):
    table = np.zeros((m, m, m), dtype=bool)
    for x in range(m):
        for y in range(m):
            lo, hi = sorted((x, y))
            table[x, y, lo + 1 : hi] = True
    return Pretree(points(m), table)


def tree_pretree(m, edges):
    T = DecompositionTree(points(m), tuple(edges))
    return Pretree(points(m), tree_betweenness(T))


@st.composite
def trees(draw, max_m=9):
    m = draw(st.integers(1, max_m))
    return m, [(draw(st.integers(0, v - 1)), v) for v in range(1, m)]


def test_line_passes_every_check():
    rep = validate_pretree(line_pretree(5))
    assert rep.passed, rep.to_json()
    assert set(rep.checks) == {
        "symmetric", "endpoints_excluded", "asymmetric", "transitive",
        "interval_monotone", "linear_order", "nested_union", "supremum",
    }


def test_interval_order_and_adjacency():
    P = line_pretree(4)
    e = P.elements
    assert interval(P, e[3], e[0]) == [e[3], e[2], e[1], e[0]]
    assert adjacent(P, e[1], e[2]) and not adjacent(P, e[0], e[2])
    assert terminal(P, e[0]) and not terminal(P, e[1])
    with pytest.raises(ValueError):
        adjacent(P, e[1], e[1])


@pytest.mark.parametrize(
    "mutate, check",
    [
        (lambda t: t.__setitem__((0, 3, 1), False), "symmetric"),
        (lambda t: t.__setitem__((0, 2, 0), True), "endpoints_excluded"),
        (lambda t: (t.__setitem__((1, 3, 0), True), t.__setitem__((3, 1, 0), True)), "asymmetric"),
    ],
)
def test_mutations_are_caught(mutate, check):
    P = line_pretree(4)
    table = P.table.copy()
    mutate(table)
    rep = validate_pretree(Pretree(P.elements, table))
    assert not rep.checks[check]
    assert check in rep.witnesses


def test_circle_betweenness_is_rejected():
    # four points on a circle, z between x and y along the shorter arc: not a pretree
    m = 4
    table = np.zeros((m, m, m), dtype=bool)
    for x in range(m):
        table[x, (x + 2) % m, (x + 1) % m] = True
    P = Pretree(points(m), table)
    assert not validate_pretree(P).passed


@settings(max_examples=60, deadline=None)
@given(trees())
def test_tree_betweenness_is_a_pretree_that_regrows_the_tree(tree):
    m, edges = tree
    P = tree_pretree(m, edges)
    assert validate_pretree(P).passed
    T = realize_tree(P)
    assert {frozenset(e) for e in T.edges} == {frozenset(e) for e in edges}


@settings(max_examples=40, deadline=None)
@given(trees())
def test_trim_drops_exactly_the_leaves(tree):
    m, edges = tree
    P = tree_pretree(m, edges)
    deg = [sum(v in e for e in edges) for v in range(m)]
    T = realize_tree(P, trim=True)
    kept = {e.members[0] for e in T.nodes}
    assert kept == {v for v in range(m) if deg[v] >= 2}


def test_non_tree_adjacency_raises():
    with pytest.raises(ModelFidelityError):
        DecompositionTree(points(3), ((0, 1), (1, 2), (0, 2)))
    with pytest.raises(ModelFidelityError):
        DecompositionTree(points(4), ((0, 1), (2, 3), (0, 1)))


def test_canonical_cycle():
    assert canonical_cycle([3, 0, 2, 1]) == (0, 2, 1, 3)
    assert canonical_cycle([2, 3, 0, 1]) == (0, 1, 2, 3)
    assert canonical_cycle([0, 5, 4, 3]) == (0, 3, 4, 5)


def test_element_image_and_labels():
    N = PretreeElement(NECKLACE, (0, 1, 2, 3), order=(0, 1, 2, 3))
    assert N.image((1, 2, 3, 0)).order == (0, 1, 2, 3)
    assert N.label() == "necklace:(0,1,2,3)"
    assert PretreeElement("class", (), (1, 2)).label() == "class:{}[1,2]"
    with pytest.raises(ValueError):
        PretreeElement("bogus", (0,))


def test_dot_and_json():
    T = realize_tree(line_pretree(3))
    assert T.to_json()["edge_length"] == 1
    assert T.to_dot().count("--") == 2
