"""Pre-layout simplification of monotone CNF formulas."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Union

from planedom.instance.model import Clause


@dataclass(frozen=True)
class Normalized:
    clauses: tuple[Clause, ...]
    forced: dict[int, bool] = field(default_factory=dict)


@dataclass(frozen=True)
class ForcedUnsat:
    reason: str


NormalizeOutcome = Union[Normalized, ForcedUnsat]


def normalize(formula: Iterable[Clause], n: int) -> NormalizeOutcome:
    """Eliminate unit clauses, duplicates and subsumed clauses.

    Unit clauses fix their variable; the fixed values are returned in
    ``forced`` so that ``clauses`` together with ``forced`` is equivalent to
    the input. Surviving clauses keep their relative order and are renumbered
    from 0.
    """
    work = [(c.polarity, set(c.vars)) for c in formula]
    for _, vs in work:
        bad = [v for v in vs if not 0 <= v < n]
        if bad:
            raise ValueError(f"variables {bad} outside 0..{n - 1}")
    forced: dict[int, bool] = {}

    while True:
        unit = next(((pol, next(iter(vs))) for pol, vs in work if len(vs) == 1), None)
        if unit is None:
            break
        pol, var = unit
        value = pol == "pos"
        if forced.get(var, value) != value:
            return ForcedUnsat(f"x{var} forced both true and false")
        forced[var] = value
        nxt = []
        for p, vs in work:
            if var in vs:
                if (p == "pos") == value:
                    continue
                vs = vs - {var}
                if not vs:
                    return ForcedUnsat(f"clause emptied after fixing x{var}={value}")
            nxt.append((p, vs))
        work = nxt

    unique: list[tuple[str, frozenset[int]]] = []
    for p, vs in work:
        key = (p, frozenset(vs))
        if key not in unique:
            unique.append(key)
    kept = [
        (p, vs)
        for p, vs in unique
        if not any(q == p and ws < vs for q, ws in unique)
    ]
    clauses = tuple(Clause(i, p, tuple(sorted(vs))) for i, (p, vs) in enumerate(kept))
    return Normalized(clauses, forced)
