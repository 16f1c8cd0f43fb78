"""
Planar monotone 3-SAT instances
===============================

Build a formula, lay it out, check the layout and solve it.
"""

from planedom.instance import Clause, GenParams, encode, generate, make_instance, normalize, solve_sat, validate

# a monotone formula: every clause is all-positive or all-negative
clauses = [Clause(0, "pos", (0, 1, 2)), Clause(1, "neg", (0, 2)), Clause(2, "pos", (2, 3))]
inst = make_instance(4, clauses)
print(inst.describe())

# the layout is exact: intervals on y=0, boxes above/below, vertical legs
for cid, box in sorted(inst.layout.rects.items()):
    print("clause", cid, "box", [str(x) for x in box])
print(validate(inst).summary())

print("satisfying assignment:", solve_sat(inst))

# unit clauses and subsumed clauses are removed before any layout exists
print(normalize([Clause(0, "pos", (1,)), Clause(1, "pos", (1, 2)), Clause(2, "neg", (0, 2))], 3))

# random instances are reproducible from their seed
a = generate(GenParams(n=5, m=6, seed=42))
assert encode(a) == encode(generate(GenParams(n=5, m=6, seed=42)))
print(a.describe())
