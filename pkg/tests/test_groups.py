import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jsjtree.cutpoint import build_cutpoint_tree, inseparable_classes
from jsjtree.enumerate import automorphisms
from jsjtree.errors import GraphError, PreconditionError
from jsjtree.graph import Graph, is_biconnected
from jsjtree.groups import (
    GraphOfGroups,
    build_group,
    check_nonnesting,
    collapse_to_reduced,
    compose,
    induced_action,
    inverse,
    non_reduced_vertices,
    orbits_and_stabilizers,
    perm_from_cycles,
    quotient_graph_of_groups,
    refine,
)
from jsjtree.io import example74
from jsjtree.jsj import jsj_elements, jsj_tree

from conftest import bowtie, c6_chord, theta_graph

SWAP = perm_from_cycles(6, [(1, 5), (2, 4)])


def gog(vertices, edges, containments=()):
    return GraphOfGroups.from_json(
        {
            "vertices": [{"id": v, "label": lab} for v, lab in vertices],
            "edges": [{"id": i, "u": u, "v": v, "label": lab} for i, (u, v, lab) in enumerate(edges)],
            "containments": [list(c) for c in containments],
        }
    )


def test_build_group_examples():
    assert build_group(c6_chord(), [SWAP]).order == 2
    assert build_group(c6_chord(), []).order == 1
    assert build_group(Graph.cycle(5), [(1, 2, 3, 4, 0)]).order == 5
    with pytest.raises(GraphError):
        build_group(Graph.cycle(5), [(1, 0, 2, 3, 4)])
    with pytest.raises(PreconditionError):
        build_group(Graph.complete(5), automorphisms(Graph.complete(5))[1:3], cap=3)


def test_group_closure_properties():
    H = build_group(theta_graph(), [perm_from_cycles(5, [(2, 3)]), perm_from_cycles(5, [(2, 3, 4)])])
    assert H.order == 6
    els = set(H.elements)
    assert all(compose(a, b) in els and inverse(a) in els for a in els for b in els)
    assert list(H.elements) == sorted(H.elements)


def test_induced_action_examples():
    T = jsj_tree(c6_chord(), trim=True)
    img = induced_action(SWAP, T)
    names = [e.label() for e in T.nodes]
    assert names[img[names.index("pair:{0,3}")]] == "pair:{0,3}"
    assert names[img[names.index("necklace:(0,1,2,3)")]] == "necklace:(0,3,4,5)"
    P = inseparable_classes(bowtie())
    img = induced_action(perm_from_cycles(5, [(0, 3), (1, 4)]), P)
    assert img == (0, 2, 1)
    assert induced_action(tuple(range(6)), T) == tuple(range(len(T.nodes)))


def test_orbits_and_stabilizers():
    T = jsj_tree(c6_chord(), trim=True)
    H = build_group(c6_chord(), [SWAP])
    rep = orbits_and_stabilizers(H, T)
    assert rep.node_orbits == [(0, 1), (2,)]
    assert len(rep.node_stabilizers[2]) == 2
    for orb in rep.node_orbits:
        assert len(orb) * len(rep.node_stabilizers[orb[0]]) == H.order
    assert sum(len(o) for o in rep.node_orbits) == len(T.nodes)
    C5 = Graph.cycle(5)
    rep = orbits_and_stabilizers(build_group(C5, [(1, 2, 3, 4, 0)]), build_cutpoint_tree(C5))
    assert rep.node_orbits == [(0,)] and len(rep.node_stabilizers[0]) == 5


def test_quotient_examples():
    G = c6_chord()
    Q = quotient_graph_of_groups(build_group(G, [SWAP]), jsj_tree(G, trim=True))
    assert Q.shape() == (("1", "G2"), ((("1", "G2"), "1"),))
    assert Q.contained("1", "G2")
    T = jsj_tree(theta_graph(), trim=True)
    S3 = build_group(theta_graph(), [perm_from_cycles(5, [(2, 3)]), perm_from_cycles(5, [(2, 3, 4)])])
    Q = quotient_graph_of_groups(S3, T)
    assert Q.shape() == (("G6",), ())
    # trivial group: the quotient is the tree itself
    T = jsj_tree(G, trim=False)
    Q = quotient_graph_of_groups(build_group(G, []), T)
    assert len(Q.vertices) == len(T.nodes) and len(Q.edges) == len(T.edges)


def test_refine_worked_example():
    ex = example74()
    gamma = GraphOfGroups.from_json(ex["gamma"])
    delta = GraphOfGroups.from_json(ex["delta"])
    R = refine(gamma, ex["vertex"], delta)
    chain = {(R.label(u), R.label(v), lab) for _, u, v, lab in R.edges}
    assert chain == {("B", "E", "E"), ("D", "C", "D"), ("E", "<x>", "<x>"), ("<x>", "D", "<x>")}
    trace = []
    C = collapse_to_reduced(R, trace)
    assert C.shape() == (("B", "C"), ((("B", "C"), "<x>"),))
    assert len(trace) == 3 and non_reduced_vertices(C) == []


def test_refine_leaf_with_single_vertex():
    gamma = gog([("a", "A"), ("b", "B")], [("a", "b", "E")], [("E", "A"), ("E", "B"), ("E", "B2")])
    R = refine(gamma, "b", gog([("only", "B2")], []))
    assert R.shape() == (("A", "B2"), ((("A", "B2"), "E"),))


def test_refine_missing_containment():
    gamma = gog([("a", "A"), ("b", "B")], [("a", "b", "E")], [("E", "A"), ("E", "B")])
    with pytest.raises(PreconditionError, match="edge 0"):
        refine(gamma, "b", gog([("x", "X")], []))


def test_collapse_examples():
    segment = gog([("0", "V"), ("1", "V"), ("2", "V")], [("0", "1", "V"), ("1", "2", "V")])
    trace = []
    C = collapse_to_reduced(segment, trace)
    assert C.vertices == (("0", "V"),) and len(trace) == 2
    reduced = gog([("0", "A"), ("1", "B")], [("0", "1", "E")], [("E", "A"), ("E", "B")])
    assert collapse_to_reduced(reduced) == reduced


def test_gog_validation():
    with pytest.raises(GraphError, match="connected"):
        gog([("0", "A"), ("1", "B")], [])
    with pytest.raises(GraphError, match="not declared contained"):
        gog([("0", "A"), ("1", "B")], [("0", "1", "E")], [("E", "A")])
    G = gog([("0", "A"), ("1", "B")], [("0", "1", "E")], [("E", "A"), ("E", "B")])
    assert GraphOfGroups.from_json(G.to_json()) == G
    assert '"0" -- "1" [label="E"]' in G.to_dot()


def test_nonnesting():
    G = c6_chord()
    rep = check_nonnesting(build_group(G, [SWAP]), jsj_tree(G, trim=False))
    assert rep["passed"] and rep["checked"] > 0


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([c6_chord(), theta_graph(), bowtie(), Graph.cycle(6), Graph.complete(4)]))
def test_induced_action_is_a_homomorphism(G):
    autos = automorphisms(G)
    P = jsj_elements(G) if is_biconnected(G) else inseparable_classes(G)
    acts = {s: induced_action(s, P) for s in autos}
    for s in autos:
        for t in autos:
            assert acts[compose(s, t)] == compose(acts[s], acts[t])
