"""Constructing rectilinear layouts, random instances and exhaustive families.

Variables sit on the line in index order. On each side of the line clause
rectangles nest by span containment: a clause drawn inside another occupies
one of its pockets (the stretch between two consecutive legs), and clauses
that only share an end variable sit side by side.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Sequence

from planedom.instance.model import (
    POLARITIES,
    Clause,
    Layout,
    Pm3SatInstance,
    check_pair_condition,
    validate,
)

INTERVAL_PITCH = Fraction(10)
INTERVAL_WIDTH = Fraction(8)


class LayoutError(ValueError):
    pass


class GenerationError(RuntimeError):
    pass


def in_pocket(inner: Clause, outer: Clause) -> bool:
    """Whether ``inner`` fits between two consecutive legs of ``outer``."""
    lo, hi = inner.vars[0], inner.vars[-1]
    return any(a <= lo and hi <= b for a, b in zip(outer.vars, outer.vars[1:]))


def compatible(a: Clause, b: Clause) -> bool:
    if a.polarity != b.polarity:
        return True
    if a.vars[-1] <= b.vars[0] or b.vars[-1] <= a.vars[0]:
        return True
    return in_pocket(a, b) or in_pocket(b, a)


def is_realizable(clauses: Sequence[Clause]) -> bool:
    return all(compatible(a, b) for a, b in combinations(clauses, 2))


def _leg_order(side: list[Clause], var: int, depth: dict[int, int]) -> list[Clause]:
    ending = [c for c in side if var in c.vars and c.vars[-1] == var]
    inner = [c for c in side if var in c.vars and c.vars[0] < var < c.vars[-1]]
    starting = [c for c in side if var in c.vars and c.vars[0] == var]
    if len(inner) > 1:
        raise LayoutError(f"clauses {[c.id for c in inner]} all pass over x{var}")
    ending.sort(key=lambda c: -depth[c.id])
    starting.sort(key=lambda c: depth[c.id])
    return ending + inner + starting


def build_layout(n: int, clauses: Sequence[Clause]) -> Layout:
    """Lay out a realizable monotone formula with exact rational coordinates."""
    if not is_realizable(clauses):
        raise LayoutError("clause family admits no nested layout with the given variable order")
    intervals = {v: (v * INTERVAL_PITCH, v * INTERVAL_PITCH + INTERVAL_WIDTH) for v in range(n)}
    rects = {}
    legs = {}
    for pol in POLARITIES:
        side = [c for c in clauses if c.polarity == pol]
        depth = {c.id: sum(in_pocket(c, o) for o in side if o is not c) for c in side}
        height: dict[int, int] = {}
        for c in sorted(side, key=lambda c: -depth[c.id]):
            below = [height[o.id] for o in side if o is not c and in_pocket(o, c)]
            height[c.id] = 1 + max(below, default=0)
        for v in range(n):
            order = _leg_order(side, v, depth)
            lo = intervals[v][0]
            for k, c in enumerate(order):
                legs[(c.id, v)] = lo + INTERVAL_WIDTH * Fraction(k + 1, len(order) + 1)
        for c in side:
            xs = [legs[(c.id, v)] for v in c.vars]
            y_lo, y_hi = Fraction(2 * height[c.id] - 1), Fraction(4 * height[c.id] - 1, 2)
            if pol == "neg":
                y_lo, y_hi = -y_hi, -y_lo
            rects[c.id] = (min(xs), max(xs), y_lo, y_hi)
    return Layout(intervals, rects, legs)


def make_instance(n: int, clauses: Sequence[Clause]) -> Pm3SatInstance:
    return Pm3SatInstance(n, tuple(clauses), build_layout(n, clauses))


@dataclass(frozen=True)
class GenParams:
    n: int
    m: int
    max_clause_size: int = 3
    polarity_mix: float = 0.5
    seed: int = 0
    max_retries: int = 50


def _admissible(chosen: list[Clause], cand: Clause) -> bool:
    key = cand.literal_key()
    for c in chosen:
        if c.polarity != cand.polarity:
            continue
        if c.literal_key() == key:
            return False
        a, b = set(c.vars), set(cand.vars)
        if a < b or b < a:
            return False
        if not compatible(c, cand):
            return False
    return check_pair_condition(chosen + [cand]).passed


def generate(params: GenParams) -> Pm3SatInstance:
    """Random normalized instance with a valid layout; deterministic in ``seed``."""
    n, m = params.n, params.m
    sizes = [s for s in (2, 3) if s <= min(params.max_clause_size, n)]
    if m and not sizes:
        raise GenerationError(f"no clause of size 2..{params.max_clause_size} fits {n} variables")
    rng = random.Random(params.seed)
    for _ in range(params.max_retries):
        chosen: list[Clause] = []
        for _ in range(40 * (m + 1)):
            if len(chosen) == m:
                break
            pol = "pos" if rng.random() < params.polarity_mix else "neg"
            vs = rng.sample(range(n), rng.choice(sizes))
            cand = Clause(len(chosen), pol, tuple(vs))
            if _admissible(chosen, cand):
                chosen.append(cand)
        if len(chosen) == m:
            inst = make_instance(n, chosen)
            if validate(inst).passed:
                return inst
    raise GenerationError(f"no admissible instance for {params} after {params.max_retries} retries")


def candidate_clauses(n: int, max_clause_size: int = 3) -> list[Clause]:
    out = []
    for pol in POLARITIES:
        for size in range(2, max_clause_size + 1):
            for vs in combinations(range(n), size):
                out.append(Clause(0, pol, vs))
    return out


def enumerate_family(max_n: int, max_m: int, min_n: int = 1) -> Iterator[Pm3SatInstance]:
    """Every normalized, pair-condition-respecting, realizable formula up to the bounds.

    Variables are laid out in index order, so formulas that are only
    realizable under a permutation appear via an isomorphic copy.
    """
    for n in range(min_n, max_n + 1):
        pool = candidate_clauses(n)
        for m in range(max_m + 1):
            for combo in combinations(pool, m):
                chosen: list[Clause] = []
                for i, c in enumerate(combo):
                    cand = Clause(i, c.polarity, c.vars)
                    if not _admissible(chosen, cand):
                        break
                    chosen.append(cand)
                else:
                    yield make_instance(n, chosen)
