"""Symmetry groups acting on JSJ trees, quotients and the refinement calculus.

Run: python3 demos/03_symmetry_quotients.py
"""
from jsjtree import (
    Graph,
    GraphOfGroups,
    build_group,
    collapse_to_reduced,
    jsj_tree,
    orbits_and_stabilizers,
    quotient_graph_of_groups,
    refine,
)
from jsjtree.groups import perm_from_cycles
from jsjtree.io import example74

hexagon = Graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)])
flip = perm_from_cycles(6, [(1, 5), (2, 4)])
H = build_group(hexagon, [flip])
T = jsj_tree(hexagon, trim=True)
rep = orbits_and_stabilizers(H, T)
print("group order:", H.order)
print("node orbits:", [[T.nodes[i].label() for i in orb] for orb in rep.node_orbits])
Q = quotient_graph_of_groups(H, T)
print("quotient:", Q.to_json()["vertices"], Q.to_json()["edges"])

# S3 permuting the arcs of a theta graph fixes the hub.
theta = Graph(5, [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)])
S3 = build_group(theta, [perm_from_cycles(5, [(2, 3)]), perm_from_cycles(5, [(2, 3, 4)])])
print("\ntheta quotient:", quotient_graph_of_groups(S3, jsj_tree(theta)).shape())

# Refine the middle vertex of B -E- A -D- C, then collapse to a reduced graph.
ex = example74()
gamma = GraphOfGroups.from_json(ex["gamma"])
refined = refine(gamma, ex["vertex"], GraphOfGroups.from_json(ex["delta"]))
print("\nrefined:", [(u, v, lab) for _, u, v, lab in refined.edges])
trace = []
reduced = collapse_to_reduced(refined, trace)
for step in trace:
    print("  collapse edge", step["edge"], ":", step["absorbed"], "into", step["keep"])
print("reduced:", reduced.shape())
