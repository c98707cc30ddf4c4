"""Cut-point trees of a few small graphs.

Run: python3 demos/01_cut_point_trees.py
"""
from jsjtree import Graph, build_cutpoint_tree, inseparable_classes, validate_pretree
from jsjtree.pretree import interval

# A bowtie: two triangles sharing vertex 2.
bowtie = Graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
P = inseparable_classes(bowtie)
print("bowtie elements:", [e.label() for e in P.elements])
print("interval from {0,1} to {3,4}:", [e.label() for e in interval(P, 1, 2)])

# Every vertex of the middle triangle is a cut point, so its block has no
# interior vertex. The class survives with an empty payload.
spiky = Graph(6, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)])
T = build_cutpoint_tree(spiky)
print("\ntriangle with pendants:")
for i, j in T.edges:
    print("  ", T.nodes[i].label(), "--", T.nodes[j].label())

# The pretree axioms are checked by exhaustive scans of the betweenness table.
rep = validate_pretree(inseparable_classes(spiky))
print("\nchecks:", rep.checks)

# Trimming removes terminal elements (the leaves of the tree).
path = Graph.path(5)
print("\npath on 5 vertices, trimmed:", [e.label() for e in build_cutpoint_tree(path, trim=True).nodes])
print(build_cutpoint_tree(path).to_dot("path5"))
