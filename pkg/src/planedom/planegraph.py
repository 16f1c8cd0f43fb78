"""Simple graphs with a rotation system (a combinatorial plane embedding).

Each vertex stores its neighbours in counter-clockwise order. Faces are
traced with the usual combinatorial-map rule: having walked the dart
``u -> v``, continue with ``v -> w`` where ``w`` precedes ``u`` in the
rotation at ``v``. With counter-clockwise rotations this keeps the face
on the left.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence


class InconsistentRotationError(ValueError):
    def __init__(self, vertex: int, message: str):
        super().__init__(f"vertex {vertex}: {message}")
        self.vertex = vertex


class DisconnectedGraphError(ValueError):
    pass


class EmbeddingError(ValueError):
    pass


class GraphDecodeError(ValueError):
    pass


class PlaneGraph:
    """Mutable while being built; treat as frozen once handed to other code."""

    def __init__(self, rotations: Sequence[Sequence[int]] = (), labels: Sequence[str] | None = None):
        self.rotations: list[list[int]] = [list(r) for r in rotations]
        if labels is None:
            labels = [""] * len(self.rotations)
        if len(labels) != len(self.rotations):
            raise ValueError("one label per vertex required")
        self.labels: list[str] = list(labels)

    @property
    def n(self) -> int:
        return len(self.rotations)

    def add_vertex(self, label: str = "") -> int:
        self.rotations.append([])
        self.labels.append(label)
        return len(self.rotations) - 1

    def add_edge(self, u: int, v: int) -> None:
        """Append an edge at the end of both rotations (no geometric meaning)."""
        if u == v:
            raise ValueError(f"self-loop at {u}")
        if self.has_edge(u, v):
            raise ValueError(f"({u}, {v}) already adjacent")
        self.rotations[u].append(v)
        self.rotations[v].append(u)

    def neighbors(self, v: int) -> list[int]:
        return self.rotations[v]

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.rotations[u]

    def edges(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u, rot in enumerate(self.rotations) for v in rot if u < v)

    def edge_set(self) -> set[frozenset[int]]:
        return {frozenset(e) for e in self.edges()}

    @property
    def num_edges(self) -> int:
        return sum(len(r) for r in self.rotations) // 2

    def vertex(self, label: str) -> int:
        return self.labels.index(label)

    def copy(self) -> PlaneGraph:
        return PlaneGraph(self.rotations, self.labels)

    def normalized_rotations(self) -> list[list[int]]:
        out = []
        for rot in self.rotations:
            if rot:
                k = rot.index(min(rot))
                rot = rot[k:] + rot[:k]
            out.append(list(rot))
        return out

    def check(self) -> None:
        """Raise InconsistentRotationError unless simple and symmetric."""
        for u, rot in enumerate(self.rotations):
            if len(set(rot)) != len(rot):
                raise InconsistentRotationError(u, f"neighbour repeated in rotation {rot}")
            for v in rot:
                if v == u:
                    raise InconsistentRotationError(u, "self-loop")
                if not 0 <= v < self.n:
                    raise InconsistentRotationError(u, f"neighbour {v} out of range")
                if u not in self.rotations[v]:
                    raise InconsistentRotationError(u, f"edge to {v} missing from rotation of {v}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PlaneGraph):
            return NotImplemented
        return self.labels == other.labels and self.normalized_rotations() == other.normalized_rotations()

    def __repr__(self) -> str:
        return f"PlaneGraph(n={self.n}, m={self.num_edges})"


@dataclass(frozen=True)
class Face:
    """Boundary walk; dart k runs from vertices[k] to vertices[k+1] (cyclically)."""

    vertices: tuple[int, ...]

    @property
    def darts(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [(vs[k], vs[(k + 1) % len(vs)]) for k in range(len(vs))]

    def __len__(self) -> int:
        return len(self.vertices)


def next_dart(G: PlaneGraph, u: int, v: int) -> tuple[int, int]:
    rot = G.rotations[v]
    return v, rot[rot.index(u) - 1]


def trace_faces(G: PlaneGraph) -> list[Face]:
    G.check()
    seen: set[tuple[int, int]] = set()
    faces = []
    for u, rot in enumerate(G.rotations):
        for v in rot:
            if (u, v) in seen:
                continue
            walk = []
            dart = (u, v)
            while dart not in seen:
                seen.add(dart)
                walk.append(dart[0])
                dart = next_dart(G, *dart)
            faces.append(Face(tuple(walk)))
    return faces


def face_containing(G: PlaneGraph, u: int, v: int) -> Face:
    """The face traced from dart u->v, with u at index 0."""
    walk = [u]
    dart = next_dart(G, u, v)
    while dart != (u, v):
        walk.append(dart[0])
        dart = next_dart(G, *dart)
    return Face(tuple(walk))


def components(G: PlaneGraph) -> list[list[int]]:
    seen = [False] * G.n
    out = []
    for s in range(G.n):
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], []
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in G.rotations[x]:
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
        out.append(sorted(comp))
    return out


def is_connected(G: PlaneGraph) -> bool:
    return G.n > 0 and len(components(G)) == 1


def euler_characteristic(G: PlaneGraph) -> int:
    if G.num_edges == 0:
        return G.n + (1 if G.n else 0)
    return G.n - G.num_edges + len(trace_faces(G))


def is_planar_embedding(G: PlaneGraph) -> bool:
    """Genus-0 check by Euler's relation for the given rotation system."""
    if not is_connected(G):
        raise DisconnectedGraphError(f"graph has {len(components(G))} components")
    return euler_characteristic(G) == 2


def is_triangulation(G: PlaneGraph) -> bool:
    if G.n < 3 or not is_planar_embedding(G):
        return False
    if any(len(f) != 3 for f in trace_faces(G)):
        return False
    assert G.num_edges == 3 * G.n - 6, "triangulated sphere must have 3V-6 edges"
    return True


def common_neighbors(G: PlaneGraph, a: int, b: int) -> set[int]:
    if a == b:
        raise ValueError("common_neighbors needs two distinct vertices")
    return set(G.rotations[a]) & set(G.rotations[b])


def split_face(G: PlaneGraph, face: Face, ia: int, ib: int) -> None:
    """In place: join face.vertices[ia] and face.vertices[ib] through the face."""
    vs = face.vertices
    a, b = vs[ia], vs[ib]
    if a == b:
        raise EmbeddingError(f"cannot join {a} to itself")
    if G.has_edge(a, b):
        raise EmbeddingError(f"({a}, {b}) already adjacent")
    k = len(vs)
    # insert the new neighbour right after the face's outgoing edge, i.e.
    # inside the angle the face occupies at that corner
    qa, qb = vs[(ia + 1) % k], vs[(ib + 1) % k]
    ra, rb = G.rotations[a], G.rotations[b]
    ra.insert(ra.index(qa) + 1, b)
    rb.insert(rb.index(qb) + 1, a)


def add_edge_in_face(G: PlaneGraph, f: Face, a: int, b: int, ia: int | None = None, ib: int | None = None) -> PlaneGraph:
    """Copy of G with chord (a, b) drawn inside face f.

    ``ia``/``ib`` select a corner when a vertex occurs more than once on f.
    """
    if a == b:
        raise EmbeddingError("chord endpoints must differ")
    if a not in f.vertices or b not in f.vertices:
        raise EmbeddingError(f"({a}, {b}) not both on face {f.vertices}")
    if G.has_edge(a, b):
        raise EmbeddingError(f"({a}, {b}) already adjacent")
    ia = f.vertices.index(a) if ia is None else ia
    ib = f.vertices.index(b) if ib is None else ib
    if f.vertices[ia] != a or f.vertices[ib] != b:
        raise EmbeddingError("corner indices do not match the endpoints")
    H = G.copy()
    split_face(H, f, ia, ib)
    return H


# -- serialization ------------------------------------------------------------


def graph_to_json(G: PlaneGraph) -> str:
    doc = {"n": G.n, "rotations": G.normalized_rotations(), "labels": list(G.labels)}
    return json.dumps(doc) + "\n"


def graph_from_json(text: str) -> PlaneGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphDecodeError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise GraphDecodeError("top level: expected an object")
    for key in ("n", "rotations", "labels"):
        if key not in doc:
            raise GraphDecodeError(f"missing field '{key}'")
    extra = sorted(set(doc) - {"n", "rotations", "labels"})
    if extra:
        raise GraphDecodeError(f"unknown field '{extra[0]}'")
    n, rots, labels = doc["n"], doc["rotations"], doc["labels"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise GraphDecodeError("n: expected a non-negative integer")
    if not isinstance(rots, list) or len(rots) != n:
        raise GraphDecodeError(f"rotations: expected {n} arrays")
    if not isinstance(labels, list) or len(labels) != n or not all(isinstance(s, str) for s in labels):
        raise GraphDecodeError(f"labels: expected {n} strings")
    for i, rot in enumerate(rots):
        if not isinstance(rot, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in rot):
            raise GraphDecodeError(f"rotations[{i}]: expected an integer array")
    G = PlaneGraph(rots, labels)
    try:
        G.check()
    except InconsistentRotationError as exc:
        raise GraphDecodeError(f"rotations[{exc.vertex}]: {exc}") from None
    return G


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(G: PlaneGraph, name: str = "G") -> str:
    lines = [f"graph {_dot_quote(name)} {{"]
    for v in range(G.n):
        lines.append(f"  {v} [label={_dot_quote(G.labels[v] or str(v))}];")
    for u, v in G.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def from_edges(n: int, edges: Iterable[tuple[int, int]], labels: Sequence[str] | None = None) -> PlaneGraph:
    G = PlaneGraph([[] for _ in range(n)], labels)
    for u, v in edges:
        G.add_edge(u, v)
    return G
