"""Gadget graphs for the domination and power-domination reductions.

Vertex labels follow a fixed scheme so every gadget vertex can be traced
back to the variable or clause it encodes:

=============  ===========================================================
``v:i``        literal vertex of x_i (both reductions)
``vbar:i``     literal vertex of ~x_i
``u:i``        third vertex of the variable gadget
``w:i``        pendant-like K4 vertex forcing a choice (domination)
``vp:i``...    ``vp``, ``vbarp``, ``up``: the antipodes in the octahedron
``z:h``        clause vertex (domination)
``vhh:h``      extra vertex of a 2-literal clause (both reductions)
``z:h:i``      clause-gadget vertex of clause h opposite variable i (power)
``zz:h``       fourth gadget vertex of a 2-literal clause (power)
=============  ===========================================================

Power-domination reductions also record the *blocked sets*: protected
vertex groups such that every outside neighbour sees at least two of them.
Nothing can propagate into such a group, so any power dominating set must
meet its closed neighbourhood.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Literal

from planedom.instance import Pm3SatInstance
from planedom.planegraph import PlaneGraph

Kind = Literal["dom", "pdom"]


@dataclass
class Reduction:
    kind: Kind
    instance: Pm3SatInstance
    graph: PlaneGraph
    roles: dict[str, int]
    protected: frozenset[int]
    neighborhoods: dict[int, frozenset[int]] = field(default_factory=dict)
    blocked: list[frozenset[int]] = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.instance.n

    def literal(self, var: int, positive: bool) -> int:
        return self.roles[("v:" if positive else "vbar:") + str(var)]

    def clause_vertices(self, cid: int) -> list[int]:
        return [v for lab, v in self.roles.items() if _clause_of(lab) == cid]


def _clause_of(label: str) -> int | None:
    kind, _, rest = label.partition(":")
    if kind in ("z", "zz", "vhh"):
        return int(rest.split(":")[0])
    return None


class ReductionError(ValueError):
    pass


def _check_input(inst: Pm3SatInstance) -> None:
    for c in inst.clauses:
        if len(c.vars) < 2:
            raise ReductionError(f"clause {c.id} has {len(c.vars)} literal(s); normalize first")


def _new(G: PlaneGraph, roles: dict[str, int], label: str) -> int:
    v = G.add_vertex(label)
    roles[label] = v
    return v


def _finish(kind: Kind, inst, G, roles, protected, blocked=()) -> Reduction:
    prot = frozenset(protected)
    nbhd = {z: frozenset(G.neighbors(z)) for z in sorted(prot)}
    return Reduction(kind, inst, G, roles, prot, nbhd, [frozenset(b) for b in blocked])


def build_dom(inst: Pm3SatInstance) -> Reduction:
    """K4 per variable, one vertex per clause, plus a twin for 2-literal clauses."""
    _check_input(inst)
    G, roles = PlaneGraph(), {}
    protected = []
    for i in range(inst.n):
        quad = [_new(G, roles, f"{p}:{i}") for p in ("v", "vbar", "u", "w")]
        for a, b in combinations(quad, 2):
            G.add_edge(a, b)
        protected.append(quad[3])
    for c in inst.clauses:
        lits = [roles[("v:" if c.positive else "vbar:") + str(x)] for x in c.vars]
        z = _new(G, roles, f"z:{c.id}")
        protected.append(z)
        for lit in lits:
            G.add_edge(z, lit)
        if len(lits) == 2:
            twin = _new(G, roles, f"vhh:{c.id}")
            for lit in lits:
                G.add_edge(twin, lit)
            G.add_edge(twin, z)
    return _finish("dom", inst, G, roles, protected)


def build_pdom(inst: Pm3SatInstance) -> Reduction:
    """Octahedron per variable; triangle gadget per 3-clause, four-vertex gadget per 2-clause."""
    _check_input(inst)
    G, roles = PlaneGraph(), {}
    protected, blocked = [], []
    for i in range(inst.n):
        six = [_new(G, roles, f"{p}:{i}") for p in ("v", "vbar", "u", "vp", "vbarp", "up")]
        for a, b in combinations(range(6), 2):
            if b - a != 3:
                G.add_edge(six[a], six[b])
        protected.extend(six[3:])
        blocked.append(six[3:])
    for c in inst.clauses:
        lit = {x: roles[("v:" if c.positive else "vbar:") + str(x)] for x in c.vars}
        if len(c.vars) == 3:
            zs = {x: _new(G, roles, f"z:{c.id}:{x}") for x in c.vars}
            for a, b in combinations(c.vars, 2):
                G.add_edge(zs[a], zs[b])
            for x in c.vars:
                for y in c.vars:
                    if y != x:
                        G.add_edge(zs[x], lit[y])
            group = list(zs.values())
        else:
            i, j = c.vars
            zi = _new(G, roles, f"z:{c.id}:{i}")
            zj = _new(G, roles, f"z:{c.id}:{j}")
            zh = _new(G, roles, f"zz:{c.id}")
            vh = _new(G, roles, f"vhh:{c.id}")
            for a, b in ((zi, zj), (zi, zh), (zi, vh), (zj, zh), (zj, vh)):
                G.add_edge(a, b)
            G.add_edge(zi, lit[j])
            G.add_edge(zj, lit[i])
            for x in (zh, vh):
                G.add_edge(x, lit[i])
                G.add_edge(x, lit[j])
            group = [zi, zj, zh]
        protected.extend(group)
        blocked.append(group)
    return _finish("pdom", inst, G, roles, protected, blocked)


def build(kind: Kind, inst: Pm3SatInstance) -> Reduction:
    if kind == "dom":
        return build_dom(inst)
    if kind == "pdom":
        return build_pdom(inst)
    raise ValueError(f"unknown reduction kind {kind!r}")


def protected_set(r: Reduction) -> frozenset[int]:
    return r.protected


def expected_counts(kind: Kind, inst: Pm3SatInstance) -> tuple[int, int]:
    """Closed-form (|V|, |E|) of the reduction before any edge is added."""
    n, m2, m3 = inst.n, inst.m2, inst.m3
    if kind == "dom":
        return 4 * n + m3 + 2 * m2, 6 * n + 3 * m3 + 5 * m2
    return 6 * n + 3 * m3 + 4 * m2, 12 * n + 9 * m3 + 11 * m2


def is_blocked(G: PlaneGraph, group) -> bool:
    """Every vertex outside ``group`` adjacent to it sees at least two members."""
    members = set(group)
    outside = {y for x in members for y in G.neighbors(x)} - members
    return all(len(members.intersection(G.neighbors(y))) >= 2 for y in outside)


def necessity_sets(G: PlaneGraph, groups) -> list[frozenset[int]]:
    """Closed neighbourhoods of verified blocked groups; each must meet any power dominating set."""
    out = []
    for grp in groups:
        if not is_blocked(G, grp):
            raise ReductionError(f"group {sorted(grp)} is not blocked in this graph")
        out.append(frozenset(grp).union(*(G.neighbors(x) for x in grp)))
    return out


PROTECTED_ROLES = frozenset({"w", "vp", "vbarp", "up", "z", "zz"})


def protected_from_labels(G: PlaneGraph) -> frozenset[int]:
    """Recover Z from role labels alone (both reductions use disjoint role names)."""
    return frozenset(v for v, lab in enumerate(G.labels) if lab.partition(":")[0] in PROTECTED_ROLES)


def blocked_groups_from_labels(G: PlaneGraph) -> list[frozenset[int]]:
    """Candidate blocked groups of a power-domination graph, read from labels.

    Pass the result through :func:`necessity_sets`, which re-checks that each
    group is really blocked in ``G``.
    """
    groups: dict[tuple[str, str], set[int]] = {}
    for v, lab in enumerate(G.labels):
        role, _, rest = lab.partition(":")
        if role in ("vp", "vbarp", "up"):
            groups.setdefault(("var", rest), set()).add(v)
        elif role in ("z", "zz") and rest.count(":") == (1 if role == "z" else 0):
            groups.setdefault(("clause", rest.split(":")[0]), set()).add(v)
    return [frozenset(g) for _, g in sorted(groups.items())]
