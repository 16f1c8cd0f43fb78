"""Small exact SAT oracles for monotone formulas."""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from planedom.instance.model import Assignment, Clause, Pm3SatInstance


class ResourceLimitError(RuntimeError):
    pass


EXHAUSTIVE_LIMIT = 24


def _clauses(inst: Pm3SatInstance | Sequence[Clause]) -> list[Clause]:
    return list(inst.clauses) if isinstance(inst, Pm3SatInstance) else list(inst)


def solve_exhaustive(n: int, clauses: Iterable[Clause], limit: int = EXHAUSTIVE_LIMIT) -> Optional[Assignment]:
    """Scan assignments in binary order (bit i = x_i); first model wins."""
    if n > limit:
        raise ResourceLimitError(f"exhaustive SAT limited to n <= {limit}, got n={n}")
    masks = [(c.positive, sum(1 << v for v in c.vars)) for c in clauses]
    full = (1 << n) - 1
    for bits in range(1 << n):
        neg = full & ~bits
        if all((bits if pos else neg) & m for pos, m in masks):
            return tuple(bool(bits >> i & 1) for i in range(n))
    return None


def solve_dpll(n: int, clauses: Iterable[Clause]) -> Optional[Assignment]:
    """Unit propagation plus branching on the lowest free variable."""
    cnf = [[v + 1 if c.positive else -(v + 1) for v in c.vars] for c in clauses]

    def assign(cnf: list[list[int]], lit: int) -> Optional[list[list[int]]]:
        out = []
        for cl in cnf:
            if lit in cl:
                continue
            rest = [x for x in cl if x != -lit]
            if not rest:
                return None
            out.append(rest)
        return out

    def search(cnf: list[list[int]], model: dict[int, bool]) -> Optional[dict[int, bool]]:
        while True:
            unit = next((cl[0] for cl in cnf if len(cl) == 1), None)
            if unit is None:
                break
            model[abs(unit)] = unit > 0
            cnf = assign(cnf, unit)
            if cnf is None:
                return None
        if not cnf:
            return model
        var = min(abs(x) for cl in cnf for x in cl)
        for lit in (-var, var):
            reduced = assign(cnf, lit)
            if reduced is not None:
                found = search(reduced, {**model, var: lit > 0})
                if found is not None:
                    return found
        return None

    model = search(cnf, {})
    if model is None:
        return None
    return tuple(model.get(i + 1, False) for i in range(n))


def solve_sat(
    inst: Pm3SatInstance,
    mode: str = "auto",
    exhaustive_limit: int = EXHAUSTIVE_LIMIT,
) -> Optional[Assignment]:
    """Return a satisfying assignment or None.

    ``mode`` is ``"exhaustive"``, ``"dpll"`` or ``"auto"`` (exhaustive up to
    12 variables, DPLL beyond).
    """
    clauses = _clauses(inst)
    if mode == "exhaustive" or (mode == "auto" and inst.n <= 12):
        return solve_exhaustive(inst.n, clauses, exhaustive_limit)
    if mode in ("dpll", "auto"):
        return solve_dpll(inst.n, clauses)
    raise ValueError(f"unknown SAT mode {mode!r}")
