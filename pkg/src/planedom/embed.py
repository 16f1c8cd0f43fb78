"""Rotation systems for reduction graphs that follow the instance layout.

Every gadget has a small local drawing. A vertex's rotation is obtained by
sorting its edge ends by direction in that drawing, except at literal
vertices, where edges towards clauses are ordered by the x coordinate of
the clause leg they travel along (right to left above the variable line,
left to right below it, which is counter-clockwise in both cases).

Consecutive variable gadgets a, b are joined along the variable line by
``v:a - u:b`` and ``vbar:a - u:b``, plus ``v:a - v:b`` when no positive
clause holds both variables (else ``vbar:a - vbar:b`` when no negative
clause does). The variable line is never crossed by legs, so the joins are
always drawable. When both polarities hold the pair, a clause vertex already
links the two gadgets, so every gadget has two disjoint attachments and the
whole graph is 2-connected: all faces are simple cycles.
"""

from __future__ import annotations

from math import atan2, degrees

from planedom.instance import Pm3SatInstance
from planedom.planegraph import EmbeddingError, PlaneGraph, is_planar_embedding
from planedom.reductions import Reduction

Point = tuple[float, float]

VARIABLE_DRAWING = {
    "dom": {"v": (0, 1), "vbar": (0, -1), "u": (-1, 0), "w": (-0.3, 0)},
    "pdom": {
        "v": (0, 1), "vbar": (0, -1), "u": (-1, 0),
        "vbarp": (-0.5, 0.3), "vp": (-0.5, -0.3), "up": (-0.2, 0),
    },
}

# angles of the join edges at either end
JOIN_AT_V, JOIN_AT_VBAR = 330.0, 30.0
JOIN_AT_U_FROM_V, JOIN_AT_U_FROM_VBAR = 170.0, 190.0
LITERAL_JOIN = {True: (350.0, 200.0), False: (10.0, 160.0)}

LIT3 = [(-2.0, -2.0), (0.0, -2.0), (2.0, -2.0)]
LIT2 = [(-2.0, -2.0), (2.0, -2.0)]


def _angle(p: Point, q: Point) -> float:
    return degrees(atan2(q[1] - p[1], q[0] - p[0])) % 360.0


def _clause_drawing(r: Reduction, cid: int, order: list[int]) -> tuple[dict[int, Point], list[int]]:
    """Local positions for the clause gadget, upper half-plane version.

    Returns positions keyed by graph vertex (gadget vertices and literal
    vertices) and the literal vertices left to right.
    """
    c = r.instance.clause(cid)
    vs = sorted(c.vars, key=order.index)
    lits = [r.literal(x, c.positive) for x in vs]
    pos: dict[int, Point] = {}
    if len(vs) == 3:
        pos.update(zip(lits, LIT3))
        if r.kind == "dom":
            pos[r.roles[f"z:{cid}"]] = (0.0, 0.0)
        else:
            a, b, k = vs
            pos[r.roles[f"z:{cid}:{a}"]] = (0.5, 0.0)
            pos[r.roles[f"z:{cid}:{b}"]] = (0.0, 1.0)
            pos[r.roles[f"z:{cid}:{k}"]] = (-0.5, 0.0)
    else:
        pos.update(zip(lits, LIT2))
        if r.kind == "dom":
            pos[r.roles[f"z:{cid}"]] = (0.0, 1.0)
            pos[r.roles[f"vhh:{cid}"]] = (0.0, -1.0)
        else:
            i, j = vs
            pos[r.roles[f"vhh:{cid}"]] = (0.0, 2.0)
            pos[r.roles[f"zz:{cid}"]] = (0.0, -1.0)
            pos[r.roles[f"z:{cid}:{i}"]] = (0.7, 0.5)
            pos[r.roles[f"z:{cid}:{j}"]] = (-0.7, 0.5)
    if not c.positive:
        pos = {v: (x, -y) for v, (x, y) in pos.items()}
    return pos, lits


def natural_embedding(inst: Pm3SatInstance, r: Reduction) -> PlaneGraph:
    G = r.graph
    order = inst.layout.variable_order()
    ends: dict[int, list[tuple[tuple, int]]] = {v: [] for v in range(G.n)}

    drawing = VARIABLE_DRAWING[r.kind]
    for i in range(inst.n):
        verts = {role: r.roles[f"{role}:{i}"] for role in drawing}
        for role, x in verts.items():
            for y in G.neighbors(x):
                other = next((q for q, w in verts.items() if w == y), None)
                if other is None:
                    continue
                ang = _angle(drawing[role], drawing[other])
                ends[x].append(((1 if role == "v" else 0, ang), y))

    for a, b in zip(order, order[1:]):
        va, vba, ub = r.roles[f"v:{a}"], r.roles[f"vbar:{a}"], r.roles[f"u:{b}"]
        ends[va].append(((1, JOIN_AT_V), ub))
        ends[ub].append(((0, JOIN_AT_U_FROM_V), va))
        ends[vba].append(((0, JOIN_AT_VBAR), ub))
        ends[ub].append(((0, JOIN_AT_U_FROM_VBAR), vba))
        positive = _literal_join_side(inst, a, b)
        if positive is not None:
            x, y = r.literal(a, positive), r.literal(b, positive)
            at_a, at_b = LITERAL_JOIN[positive]
            ends[x].append(((1 if positive else 0, at_a), y))
            ends[y].append(((1 if positive else 0, at_b), x))

    for c in inst.clauses:
        pos, lits = _clause_drawing(r, c.id, order)
        gadget = [v for v in pos if v not in lits]
        for g in gadget:
            for y in G.neighbors(g):
                ends[g].append(((0, _angle(pos[g], pos[y])), y))
                if y in lits:
                    var = int(G.labels[y].split(":")[1])
                    leg = inst.layout.legs[(c.id, var)]
                    ang = _angle(pos[y], pos[g])
                    key = (0, -leg, ang) if c.positive else (1, leg, ang)
                    ends[y].append((key, g))

    H = PlaneGraph([[] for _ in range(G.n)], G.labels)
    for v in range(G.n):
        ordered = sorted(ends[v])
        keys = [k for k, _ in ordered]
        if len(set(keys)) != len(keys):
            raise EmbeddingError(f"vertex {v} ({G.labels[v]}): two edges leave in the same direction")
        H.rotations[v] = [y for _, y in ordered]
    H.check()
    missing = G.edge_set() - H.edge_set()
    if missing:
        raise EmbeddingError(f"edges {sorted(tuple(sorted(e)) for e in missing)} were not placed")
    if not is_planar_embedding(H):
        raise EmbeddingError("layout-derived rotation system is not planar")
    return H


def _literal_join_side(inst: Pm3SatInstance, a: int, b: int) -> bool | None:
    """Side whose literal vertices of a and b may be joined, or None."""
    for positive in (True, False):
        if not any(c.positive == positive and a in c.vars and b in c.vars for c in inst.clauses):
            return positive
    return None


def join_edges(inst: Pm3SatInstance, r: Reduction) -> list[tuple[int, int]]:
    order = inst.layout.variable_order()
    out = []
    for a, b in zip(order, order[1:]):
        ub = r.roles[f"u:{b}"]
        out += [(r.roles[f"v:{a}"], ub), (r.roles[f"vbar:{a}"], ub)]
        positive = _literal_join_side(inst, a, b)
        if positive is not None:
            out.append((r.literal(a, positive), r.literal(b, positive)))
    return out
