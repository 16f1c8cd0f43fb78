"""
Power domination on the octahedron gadget
=========================================

One closed-neighbourhood step, then propagation: an observed vertex with a
single unobserved neighbour observes it.
"""

from planedom.instance import make_instance
from planedom.reductions import build_pdom
from planedom.solvers import (
    closed_neighborhood,
    gamma1_step,
    min_dominating,
    min_power_dominating,
    power_closure,
    s1,
    two_step_saturation,
)

G = build_pdom(make_instance(1, [])).graph
lab = G.labels
v = G.vertex("v:0")

step0 = closed_neighborhood(G, {v})
print("after domination:", sorted(lab[x] for x in step0))
print("allowed to propagate:", sorted(lab[x] for x in s1(G, step0)))
print("after one round:", sorted(lab[x] for x in gamma1_step(G, step0)))
print("two-step saturated:", two_step_saturation(G, {v}))

# a path shows propagation taking several rounds
path = [[1], [0, 2], [1, 3], [2, 4], [3]]
print("path closure from an end:", sorted(power_closure(path, {0})), "two-step:", two_step_saturation(path, {0}))

# the octahedron needs two vertices to dominate but one to power-dominate
print("gamma =", min_dominating(G).size, " gamma_P =", min_power_dominating(G).size)
