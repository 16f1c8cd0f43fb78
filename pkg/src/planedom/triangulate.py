"""Triangulating a plane graph without giving protected vertices new neighbours.

The four conditions checked by :func:`certify` on a protected set Z:

1. every z in Z has degree at least 3;
2. if two neighbours of z are consecutive in its rotation and adjacent to
   each other, they bound a triangular face with z;
3. adjacent z, z' in Z have exactly two common neighbours, each forming a
   triangular face with the edge zz';
4. two vertices outside Z with two or more common neighbours in Z have
   exactly two, z and z', and v z v' z' is a face.

Under these conditions :func:`triangulate_protected` first closes every
angle at a protected vertex with a chord between its two sides, then
fan-triangulates whatever faces remain (none of which touch Z by then).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from planedom.planegraph import (
    Face,
    PlaneGraph,
    face_containing,
    is_connected,
    is_triangulation,
    split_face,
    trace_faces,
)
from planedom.report import VerificationReport

COND1, COND2, COND3, COND4 = (
    "(1) degree >= 3",
    "(2) consecutive neighbours",
    "(3) protected edges",
    "(4) shared protected neighbours",
)


class CertificationError(ValueError):
    def __init__(self, report: VerificationReport):
        super().__init__(report.summary())
        self.report = report


class TriangulationError(RuntimeError):
    pass


def _dart_faces(G: PlaneGraph) -> dict[tuple[int, int], Face]:
    return {d: f for f in trace_faces(G) for d in f.darts}


def certify(G: PlaneGraph, Z: Iterable[int]) -> VerificationReport:
    Z = frozenset(Z)
    rep = VerificationReport("protected triangulation conditions")
    for c in (COND1, COND2, COND3, COND4):
        rep.ran(c)
    faces = _dart_faces(G)

    for z in sorted(Z):
        if G.degree(z) < 3:
            rep.fail(COND1, f"z={z} ({G.labels[z]}) has degree {G.degree(z)}")

    for z in sorted(Z):
        rot = G.rotations[z]
        for k, v in enumerate(rot):
            w = rot[(k + 1) % len(rot)]
            if v != w and G.has_edge(v, w) and len(faces[(w, z)]) != 3:
                rep.fail(COND2, f"z={z}: neighbours {v},{w} are adjacent but ({v},{w},{z}) is not a face")

    for z, y in G.edges():
        if z not in Z or y not in Z:
            continue
        common = set(G.neighbors(z)) & set(G.neighbors(y))
        if len(common) != 2:
            rep.fail(COND3, f"protected edge ({z},{y}) has {len(common)} common neighbours {sorted(common)}")
            continue
        thirds = set()
        for d in ((z, y), (y, z)):
            f = faces[d]
            if len(f) == 3:
                thirds.update(set(f.vertices) - {z, y})
        if thirds != common:
            rep.fail(COND3, f"protected edge ({z},{y}): common neighbours {sorted(common)} do not both close triangular faces")

    shared: dict[tuple[int, int], list[int]] = {}
    for z in sorted(Z):
        outside = sorted(v for v in G.neighbors(z) if v not in Z)
        for pair in combinations(outside, 2):
            shared.setdefault(pair, []).append(z)
    quads = {frozenset(f.vertices): f for f in faces.values() if len(f) == 4}
    for (v, w), zs in sorted(shared.items()):
        if len(zs) < 2:
            continue
        if len(zs) > 2:
            rep.fail(COND4, f"({v},{w}) share {len(zs)} protected neighbours {zs}")
            continue
        f = quads.get(frozenset((v, w, *zs)))
        if f is None or abs(f.vertices.index(v) - f.vertices.index(w)) != 2:
            rep.fail(COND4, f"({v},{zs[0]},{w},{zs[1]}) is not a face")
    return rep


@dataclass
class TriangulationLog:
    cases: Counter = field(default_factory=Counter)
    chords: list[tuple[int, int]] = field(default_factory=list)
    fan_faces: int = 0
    fallback_faces: int = 0

    @property
    def used_fallback(self) -> bool:
        return self.fallback_faces > 0


def _close_protected_angles(H: PlaneGraph, Z: frozenset[int], log: TriangulationLog) -> None:
    for z in sorted(Z):
        rot = H.rotations[z]
        for k in range(len(rot)):
            v, w = rot[k], rot[(k + 1) % len(rot)]
            face = face_containing(H, w, z)  # (w, z, v, ...)
            if len(face) == 3:
                log.cases["a" if H.has_edge(v, w) and v not in Z and w not in Z else "b"] += 1
                continue
            if H.has_edge(v, w):
                raise TriangulationError(
                    f"z={z}: ({v},{w}) already adjacent outside face {face.vertices}; chord would double an edge"
                )
            if v in Z or w in Z:
                raise TriangulationError(f"z={z}: angle ({v},{w}) touches Z but is not triangular")
            others = (set(H.neighbors(v)) & set(H.neighbors(w)) & Z) - {z}
            log.cases["d" if others else "c"] += 1
            split_face(H, face, 2, 0)
            log.chords.append((min(v, w), max(v, w)))
            if len(face_containing(H, w, z)) != 3:
                raise TriangulationError(f"chord ({v},{w}) did not close a triangle at z={z}")
    for z in sorted(Z):
        for v in H.rotations[z]:
            if len(face_containing(H, z, v)) != 3:
                raise TriangulationError(f"face at protected z={z} still open after the protected pass")


def _fan_apex(H: PlaneGraph, face: Face, Z: frozenset[int]) -> int | None:
    vs = face.vertices
    if len(set(vs)) != len(vs):
        return None
    for a in sorted(x for x in vs if x not in Z):
        i = vs.index(a)
        k = len(vs)
        targets = [vs[(i + d) % k] for d in range(2, k - 1)]
        if all(t not in Z and not H.has_edge(a, t) for t in targets):
            return a
    return None


def _fan(H: PlaneGraph, face: Face, a: int, log: TriangulationLog) -> None:
    vs = face.vertices
    i, k = vs.index(a), len(vs)
    current = face
    for d in range(2, k - 1):
        t = vs[(i + d) % k]
        split_face(H, current, current.vertices.index(a), current.vertices.index(t))
        log.chords.append((min(a, t), max(a, t)))
        current = face_containing(H, a, t)


def _search(H: PlaneGraph, face: Face, Z: frozenset[int], log: TriangulationLog) -> bool:
    vs = face.vertices
    k = len(vs)
    if k == 3:
        return True
    for i, j in combinations(range(k), 2):
        a, b = vs[i], vs[j]
        if j - i in (1, k - 1) or a == b or a in Z or b in Z or H.has_edge(a, b):
            continue
        split_face(H, face, i, j)
        left, right = face_containing(H, a, b), face_containing(H, b, a)
        mark = len(log.chords)
        log.chords.append((min(a, b), max(a, b)))
        if _search(H, left, Z, log) and _search(H, right, Z, log):
            return True
        # undo everything added below this chord, then the chord itself
        for x, y in log.chords[mark:]:
            H.rotations[x].remove(y)
            H.rotations[y].remove(x)
        del log.chords[mark:]
    return False


def triangulate_with_log(G: PlaneGraph, Z: Iterable[int], allow_fallback: bool = True) -> tuple[PlaneGraph, TriangulationLog]:
    Z = frozenset(Z)
    if G.n < 4 or not is_connected(G):
        raise TriangulationError("need a connected graph on at least 4 vertices")
    rep = certify(G, Z)
    if not rep.passed:
        raise CertificationError(rep)
    H = G.copy()
    log = TriangulationLog()
    _close_protected_angles(H, Z, log)
    # the chords above are the only edges that could break (2); make sure they did not
    recheck = certify(H, Z)
    if recheck.failed(COND2):
        raise TriangulationError("condition (2) violated after closing protected angles: " + recheck.summary())
    while True:
        open_faces = [f for f in trace_faces(H) if len(f) > 3]
        if not open_faces:
            break
        face = open_faces[0]
        if len(face) < 3:
            raise TriangulationError(f"degenerate face {face.vertices}")
        apex = _fan_apex(H, face, Z)
        if apex is not None:
            log.fan_faces += 1
            _fan(H, face, apex, log)
            continue
        if not allow_fallback:
            raise TriangulationError(f"no legal fan apex for face {face.vertices}")
        log.fallback_faces += 1
        if not _search(H, face, Z, log):
            raise TriangulationError(f"fan and exhaustive chord search failed on face {face.vertices}")
    if not is_triangulation(H):
        raise TriangulationError("result is not a triangulation")
    return H, log


def triangulate_protected(G: PlaneGraph, Z: Iterable[int], allow_fallback: bool = True) -> PlaneGraph:
    return triangulate_with_log(G, Z, allow_fallback)[0]


def triangulate_free(G: PlaneGraph, Z: Iterable[int] = ()) -> tuple[PlaneGraph, TriangulationLog]:
    """Fan/search triangulation that skips certification (negative controls)."""
    Z = frozenset(Z)
    H = G.copy()
    log = TriangulationLog()
    while True:
        open_faces = [f for f in trace_faces(H) if len(f) > 3]
        if not open_faces:
            return H, log
        face = open_faces[0]
        apex = _fan_apex(H, face, Z)
        if apex is not None:
            log.fan_faces += 1
            _fan(H, face, apex, log)
        else:
            log.fallback_faces += 1
            if not _search(H, face, Z, log):
                raise TriangulationError(f"no legal triangulation of face {face.vertices} avoiding Z")


def verify_triangulation(before: PlaneGraph, after: PlaneGraph, Z: Iterable[int]) -> VerificationReport:
    rep = VerificationReport("protected triangulation")
    rep.ran("triangulated")
    try:
        if not is_triangulation(after):
            rep.fail("triangulated", "output has a non-triangular face or is not planar")
    except ValueError as exc:
        rep.fail("triangulated", str(exc))
    rep.ran("edges kept")
    lost = before.edge_set() - after.edge_set()
    if lost:
        rep.fail("edges kept", f"edges removed: {sorted(tuple(sorted(e)) for e in lost)}")
    rep.ran("protected neighbourhoods")
    for z in sorted(Z):
        if set(before.neighbors(z)) != set(after.neighbors(z)):
            gained = sorted(set(after.neighbors(z)) - set(before.neighbors(z)))
            rep.fail("protected neighbourhoods", f"z={z} ({after.labels[z]}) gained neighbours {gained}")
    return rep
