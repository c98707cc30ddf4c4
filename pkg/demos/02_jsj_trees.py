"""Necklaces, inseparable sets and JSJ trees of 2-connected graphs.

Run: python3 demos/02_jsj_trees.py
"""
from jsjtree import Graph, cyclic_decomposition, gaps, jsj_elements, jsj_tree

# A cycle is one big necklace; trimming leaves nothing.
for n in (3, 5, 8):
    P = jsj_elements(Graph.cycle(n))
    print(f"C{n}:", [e.label() for e in P.elements], "trimmed tree nodes:", len(jsj_tree(Graph.cycle(n)).nodes))

# Hexagon with a long chord 0-3: two necklaces hinged at the pair {0,3}.
hexagon = Graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)])
P = jsj_elements(hexagon)
print("\nchorded hexagon elements:", [e.label() for e in P.elements])
T = jsj_tree(hexagon, trim=True)
print("trimmed tree:", [(T.nodes[i].label(), T.nodes[j].label()) for i, j in T.edges])

D = cyclic_decomposition(hexagon, [0, 1, 2, 3])
print("decomposition of {0,1,2,3}:", D.points, D.parts)
for g in gaps(hexagon, [0, 1, 2, 3]):
    print("gap:", g.to_json())

# Theta graph: poles 0 and 1 joined by three arcs. The pair is the hub.
theta = Graph(5, [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)])
U = jsj_tree(theta, trim=False)
print("\ntheta, untrimmed:", [(U.nodes[i].label(), U.nodes[j].label()) for i, j in U.edges])
print("theta, trimmed:", [e.label() for e in jsj_tree(theta).nodes])
