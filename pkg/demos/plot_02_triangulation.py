"""
Reduction graphs and protected triangulation
============================================

Turn an instance into the domination gadget graph, draw it along the
layout, and triangulate it without giving any protected vertex a new
neighbour.
"""

from planedom.embed import natural_embedding
from planedom.planegraph import export_dot, trace_faces
from planedom.reductions import build
from planedom.triangulate import certify, triangulate_with_log, verify_triangulation
from planedom.workbench import u3

inst = u3()
r = build("dom", inst)
print("vertices", r.graph.n, "edges", r.graph.num_edges, "protected", len(r.protected))

# rotations follow the rectilinear layout; planarity is read off Euler's formula
E = natural_embedding(inst, r)
print("face lengths", sorted(len(f) for f in trace_faces(E)))

# the four conditions on Z must hold before triangulating
print(certify(E, r.protected).summary())

T, log = triangulate_with_log(E, r.protected)
print("cases", dict(log.cases), "chords", len(log.chords), "fallback", log.used_fallback)
print("edges after", T.num_edges, "= 3|V| - 6 =", 3 * T.n - 6)
print(verify_triangulation(E, T, r.protected).summary())

# DOT for graphviz
print(export_dot(T).splitlines()[:4])
