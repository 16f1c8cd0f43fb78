"""Planar monotone 3-SAT instances: formula, rectilinear layout, validation."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Literal, Sequence

from planedom.report import VerificationReport

Polarity = Literal["pos", "neg"]
POLARITIES: tuple[Polarity, ...] = ("pos", "neg")

Interval = tuple[Fraction, Fraction]
Rect = tuple[Fraction, Fraction, Fraction, Fraction]  # x_lo, x_hi, y_lo, y_hi
Assignment = tuple[bool, ...]


@dataclass(frozen=True)
class Clause:
    id: int
    polarity: Polarity
    vars: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.polarity not in POLARITIES:
            raise ValueError(f"clause {self.id}: polarity must be 'pos' or 'neg', got {self.polarity!r}")
        vs = tuple(self.vars)
        if len(set(vs)) != len(vs):
            raise ValueError(f"clause {self.id}: repeated variable in {vs}")
        if not 1 <= len(vs) <= 3:
            raise ValueError(f"clause {self.id}: needs 1 to 3 literals, got {len(vs)}")
        object.__setattr__(self, "vars", tuple(sorted(vs)))

    @property
    def positive(self) -> bool:
        return self.polarity == "pos"

    def literal_key(self) -> tuple[Polarity, frozenset[int]]:
        return self.polarity, frozenset(self.vars)

    def satisfied_by(self, a: Sequence[bool]) -> bool:
        want = self.positive
        return any(a[v] == want for v in self.vars)

    def __str__(self) -> str:
        bar = "" if self.positive else "~"
        return "(" + " | ".join(f"{bar}x{v}" for v in self.vars) + ")"


@dataclass(frozen=True)
class Layout:
    """Rectilinear drawing: variable intervals on y=0, clause boxes, vertical legs."""

    intervals: dict[int, Interval] = field(default_factory=dict)
    rects: dict[int, Rect] = field(default_factory=dict)
    legs: dict[tuple[int, int], Fraction] = field(default_factory=dict)

    def variable_order(self) -> list[int]:
        return sorted(self.intervals, key=lambda v: self.intervals[v])


@dataclass(frozen=True)
class Pm3SatInstance:
    n: int
    clauses: tuple[Clause, ...]
    layout: Layout

    def __post_init__(self) -> None:
        object.__setattr__(self, "clauses", tuple(self.clauses))
        if self.n < 0:
            raise ValueError("variable count must be non-negative")
        for c in self.clauses:
            bad = [v for v in c.vars if not 0 <= v < self.n]
            if bad:
                raise ValueError(f"clause {c.id} uses unknown variables {bad}")

    def clause(self, cid: int) -> Clause:
        for c in self.clauses:
            if c.id == cid:
                return c
        raise KeyError(cid)

    @property
    def m2(self) -> int:
        return sum(1 for c in self.clauses if len(c.vars) == 2)

    @property
    def m3(self) -> int:
        return sum(1 for c in self.clauses if len(c.vars) == 3)

    def without_clause(self, cid: int) -> Pm3SatInstance:
        lay = self.layout
        return Pm3SatInstance(
            self.n,
            tuple(c for c in self.clauses if c.id != cid),
            Layout(
                dict(lay.intervals),
                {k: r for k, r in lay.rects.items() if k != cid},
                {k: x for k, x in lay.legs.items() if k[0] != cid},
            ),
        )

    def describe(self) -> str:
        body = " & ".join(str(c) for c in self.clauses) or "(empty)"
        return f"n={self.n} m={len(self.clauses)}: {body}"


def evaluate(inst: Pm3SatInstance | Iterable[Clause], a: Sequence[bool]) -> bool:
    clauses = inst.clauses if isinstance(inst, Pm3SatInstance) else inst
    return all(c.satisfied_by(a) for c in clauses)


# -- validation -------------------------------------------------------------


def _closed_overlap(a_lo, a_hi, b_lo, b_hi) -> bool:
    return a_lo <= b_hi and b_lo <= a_hi


def _rect_hits_leg(rect: Rect, x: Fraction, y_from: Fraction, y_to: Fraction) -> bool:
    """Does the closed box meet the open vertical segment x, (y_from, y_to)?"""
    x_lo, x_hi, y_lo, y_hi = rect
    lo, hi = min(y_from, y_to), max(y_from, y_to)
    return x_lo <= x <= x_hi and y_lo < hi and lo < y_hi


def leg_segment(inst: Pm3SatInstance, cid: int, var: int) -> tuple[Fraction, Fraction, Fraction]:
    """(x, y at the variable line, y at the clause box)."""
    c = inst.clause(cid)
    x_lo, x_hi, y_lo, y_hi = inst.layout.rects[cid]
    return inst.layout.legs[(cid, var)], Fraction(0), (y_lo if c.positive else y_hi)


def validate(inst: Pm3SatInstance) -> VerificationReport:
    rep = VerificationReport("instance")
    lay = inst.layout

    rep.ran("clauses normalized")
    seen: dict[tuple, int] = {}
    for c in inst.clauses:
        if len(c.vars) < 2:
            rep.fail("clauses normalized", f"clause {c.id} {c} has a single literal")
        key = c.literal_key()
        if key in seen:
            rep.fail("clauses normalized", f"clauses {seen[key]} and {c.id} are identical")
        seen.setdefault(key, c.id)
    for a, b in combinations(inst.clauses, 2):
        if a.polarity == b.polarity and a.literal_key() != b.literal_key():
            sa, sb = set(a.vars), set(b.vars)
            if sa < sb or sb < sa:
                small, big = (a, b) if sa < sb else (b, a)
                rep.fail("clauses normalized", f"clause {big.id} {big} is subsumed by clause {small.id} {small}")
    ids = [c.id for c in inst.clauses]
    if len(set(ids)) != len(ids):
        rep.fail("clauses normalized", f"duplicate clause ids in {ids}")

    rep.ran("intervals")
    if set(lay.intervals) != set(range(inst.n)):
        rep.fail("intervals", f"intervals given for {sorted(lay.intervals)}, expected variables 0..{inst.n - 1}")
    for v, (lo, hi) in sorted(lay.intervals.items()):
        if not lo < hi:
            rep.fail("intervals", f"variable {v} interval [{lo}, {hi}] is empty")
    for (v, (alo, ahi)), (w, (blo, bhi)) in combinations(sorted(lay.intervals.items()), 2):
        if _closed_overlap(alo, ahi, blo, bhi):
            rep.fail("intervals", f"intervals overlap: x{v} [{alo}, {ahi}] and x{w} [{blo}, {bhi}]")

    rep.ran("rectangles")
    cids = {c.id for c in inst.clauses}
    if set(lay.rects) != cids:
        rep.fail("rectangles", f"rectangles given for {sorted(lay.rects)}, expected clauses {sorted(cids)}")
    for c in inst.clauses:
        if c.id not in lay.rects:
            continue
        x_lo, x_hi, y_lo, y_hi = lay.rects[c.id]
        if not (x_lo < x_hi and y_lo < y_hi):
            rep.fail("rectangles", f"clause {c.id} rectangle {lay.rects[c.id]} is degenerate")
        if c.positive and not y_lo > 0:
            rep.fail("rectangles", f"positive clause {c.id} rectangle reaches y={y_lo} <= 0")
        if not c.positive and not y_hi < 0:
            rep.fail("rectangles", f"negative clause {c.id} rectangle reaches y={y_hi} >= 0")
    for (i, r), (j, s) in combinations(sorted(lay.rects.items()), 2):
        if _closed_overlap(r[0], r[1], s[0], s[1]) and _closed_overlap(r[2], r[3], s[2], s[3]):
            rep.fail("rectangles", f"rectangles overlap: clause {i} {r} and clause {j} {s}")

    rep.ran("legs")
    expected = {(c.id, v) for c in inst.clauses for v in c.vars}
    if set(lay.legs) != expected:
        extra = sorted(set(lay.legs) - expected)
        missing = sorted(expected - set(lay.legs))
        rep.fail("legs", f"leg set mismatch: missing {missing}, unexpected {extra}")
    usable = [k for k in sorted(expected & set(lay.legs)) if k[0] in lay.rects and k[1] in lay.intervals]
    for cid, v in usable:
        x = lay.legs[(cid, v)]
        lo, hi = lay.intervals[v]
        if not lo <= x <= hi:
            rep.fail("legs", f"leg of clause {cid} to x{v} at x={x} misses interval [{lo}, {hi}]")
        r = lay.rects[cid]
        if not r[0] <= x <= r[1]:
            rep.fail("legs", f"leg of clause {cid} to x{v} at x={x} misses its rectangle [{r[0]}, {r[1]}]")
    for c in inst.clauses:
        xs = [lay.legs[(c.id, v)] for v in c.vars if (c.id, v) in lay.legs]
        if len(set(xs)) != len(xs):
            rep.fail("legs", f"clause {c.id} has two legs at the same x")
    for cid, v in usable:
        x, y0, y1 = leg_segment(inst, cid, v)
        for other, r in sorted(lay.rects.items()):
            if other != cid and _rect_hits_leg(r, x, y0, y1):
                rep.fail("legs", f"leg of clause {cid} to x{v} at x={x} passes through rectangle of clause {other}")
        for w, (lo, hi) in sorted(lay.intervals.items()):
            if w != v and lo <= x <= hi:
                rep.fail("legs", f"leg of clause {cid} to x{v} lands on interval of x{w}")

    rep.ran("legs non-crossing")
    for (ka, kb) in combinations(usable, 2):
        xa, _, ya = leg_segment(inst, *ka)
        xb, _, yb = leg_segment(inst, *kb)
        same_side = (ya > 0) == (yb > 0)
        if xa == xb and same_side:
            rep.fail("legs non-crossing", f"legs {ka} and {kb} overlap at x={xa}")
    return rep


def check_pair_condition(inst: Pm3SatInstance | Iterable[Clause]) -> VerificationReport:
    """Any two literals share at most two clauses, and if two, both have a third literal."""
    clauses = inst.clauses if isinstance(inst, Pm3SatInstance) else list(inst)
    rep = VerificationReport("pair condition")
    rep.ran("literal pairs")
    holders: dict[tuple[str, int, int], list[Clause]] = {}
    for c in clauses:
        for a, b in combinations(c.vars, 2):
            holders.setdefault((c.polarity, a, b), []).append(c)
    for (pol, a, b), cs in sorted(holders.items()):
        lit = "x" if pol == "pos" else "~x"
        if len(cs) > 2:
            rep.fail("literal pairs", f"{lit}{a},{lit}{b} occur together in {len(cs)} clauses {[c.id for c in cs]}")
        elif len(cs) == 2 and any(len(c.vars) < 3 for c in cs):
            rep.fail(
                "literal pairs",
                f"{lit}{a},{lit}{b} shared by clauses {[c.id for c in cs]} but one lacks a third literal",
            )
    return rep
