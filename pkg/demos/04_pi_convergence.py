"""Boundary dynamics in the product of two free-group trees.

Run: python3 demos/04_pi_convergence.py
"""
import math

from jsjtree import (
    JoinPoint,
    canonicalize,
    iterate_limit,
    limit_points,
    single_tree_dynamics,
    tits_diameter_sample,
    tits_distance,
    verify_pi_convergence,
)
from jsjtree.tits import summarize

# Ends are eventually periodic words; "A" is the inverse of "a".
print("ab(Ba)^inf is", canonicalize("ab", "Ba"))

g = ("aa", "b")
n, p = limit_points(g)
print("\nrepelling point:", n.to_json())
print("attracting point:", p.to_json(), "slope", p.theta, "vs atan(1/2)", math.atan(0.5))

c = JoinPoint(canonicalize("", "b"), math.pi / 3, canonicalize("", "a"))
L = iterate_limit(g, c)
print("limit of g^k c:", L.to_json(), "distance to p:", tits_distance(L, p))

for iso in [("a", "b"), ("ab", "a"), ("baB", "abAB")]:
    s = summarize(verify_pi_convergence(iso, samples=500, seed=0))
    print("certificates for", iso, s)

print("\nsampled diameter:", tits_diameter_sample(samples=5000))

for tr in single_tree_dynamics("ab", samples=3, k_max=12):
    print("w=ab from", tr.end, "agreement", tr.agreement)
