"""Domination and power-domination operators and exact minimum solvers.

Vertex sets are passed in as any iterable of vertex indices and returned as
frozensets; internally everything runs on Python int bitmasks.

Power domination follows the two-phase process: one closed-neighbourhood
step, then repeated propagation where every observed vertex with exactly
one unobserved neighbour observes it. The empty seed observes nothing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Sequence, Union

from planedom.instance.sat import ResourceLimitError
from planedom.planegraph import PlaneGraph

GraphLike = Union[PlaneGraph, Sequence[Iterable[int]]]

DEFAULT_NODE_LIMIT = 5_000_000


def _adjacency(G: GraphLike) -> list[int]:
    rows = G.rotations if isinstance(G, PlaneGraph) else G
    nbr = []
    for v, row in enumerate(rows):
        m = 0
        for u in row:
            if u == v:
                raise ValueError(f"self-loop at {v}")
            m |= 1 << u
        nbr.append(m)
    return nbr


def to_mask(S: Iterable[int], n: int) -> int:
    m = 0
    for v in S:
        if not 0 <= v < n:
            raise ValueError(f"vertex {v} not in graph of order {n}")
        m |= 1 << v
    return m


def from_mask(m: int) -> frozenset[int]:
    return frozenset(_bits(m))


def _bits(m: int) -> Iterator[int]:
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def _closed_mask(nbr: list[int], s: int) -> int:
    out = s
    for v in _bits(s):
        out |= nbr[v]
    return out


def _gamma1_mask(nbr: list[int], s: int) -> int:
    out = s
    for v in _bits(s):
        rest = nbr[v] & ~s
        if rest and not rest & (rest - 1):
            out |= rest
    return out


def _power_mask(nbr: list[int], s: int) -> int:
    obs = _closed_mask(nbr, s)
    for _ in range(len(nbr) + 1):
        nxt = _gamma1_mask(nbr, obs)
        if nxt == obs:
            return obs
        obs = nxt
    raise AssertionError("propagation failed to reach a fixpoint within |V| rounds")


def closed_neighborhood(G: GraphLike, S: Iterable[int]) -> frozenset[int]:
    nbr = _adjacency(G)
    return from_mask(_closed_mask(nbr, to_mask(S, len(nbr))))


def is_dominating(G: GraphLike, S: Iterable[int]) -> bool:
    nbr = _adjacency(G)
    return _closed_mask(nbr, to_mask(S, len(nbr))) == (1 << len(nbr)) - 1


def s1(G: GraphLike, S: Iterable[int]) -> frozenset[int]:
    """Members of S with exactly one neighbour outside S."""
    nbr = _adjacency(G)
    s = to_mask(S, len(nbr))
    return frozenset(v for v in _bits(s) if (nbr[v] & ~s).bit_count() == 1)


def gamma1_step(G: GraphLike, S: Iterable[int]) -> frozenset[int]:
    nbr = _adjacency(G)
    return from_mask(_gamma1_mask(nbr, to_mask(S, len(nbr))))


def power_closure(G: GraphLike, S: Iterable[int]) -> frozenset[int]:
    nbr = _adjacency(G)
    return from_mask(_power_mask(nbr, to_mask(S, len(nbr))))


def power_rounds(G: GraphLike, S: Iterable[int]) -> int:
    """Number of propagation rounds that still observed something new."""
    nbr = _adjacency(G)
    obs, rounds = _closed_mask(nbr, to_mask(S, len(nbr))), 0
    while (nxt := _gamma1_mask(nbr, obs)) != obs:
        obs, rounds = nxt, rounds + 1
    return rounds


def is_power_dominating(G: GraphLike, S: Iterable[int]) -> bool:
    nbr = _adjacency(G)
    return _power_mask(nbr, to_mask(S, len(nbr))) == (1 << len(nbr)) - 1


def two_step_saturation(G: GraphLike, S: Iterable[int]) -> bool:
    """V is observed after the domination step plus a single propagation round."""
    nbr = _adjacency(G)
    full = (1 << len(nbr)) - 1
    return _gamma1_mask(nbr, _closed_mask(nbr, to_mask(S, len(nbr)))) == full


@dataclass(frozen=True)
class SolveResult:
    """``size`` and ``witness`` are None when no set within ``budget`` exists."""

    size: Optional[int]
    witness: Optional[frozenset[int]]
    budget: Optional[int]
    nodes: int

    @property
    def exceeded(self) -> bool:
        return self.size is None

    @property
    def lower_bound(self) -> int:
        return self.size if self.size is not None else self.budget + 1


class _Counter:
    def __init__(self, limit: int):
        self.limit, self.count = limit, 0

    def tick(self) -> None:
        self.count += 1
        if self.count > self.limit:
            raise ResourceLimitError(f"search exceeded {self.limit} nodes")


# -- domination ---------------------------------------------------------------


def _dom_packing(closed: list[int], undom: int, allowed: int) -> int:
    """Undominated vertices whose candidate sets are pairwise disjoint."""
    used, count = 0, 0
    order = sorted(_bits(undom), key=lambda v: (closed[v] & allowed).bit_count())
    for v in order:
        cand = closed[v] & allowed
        if not cand & used:
            used |= cand
            count += 1
    return count


def _can_dominate(closed: list[int], undom: int, allowed: int, r: int, ctr: _Counter) -> bool:
    ctr.tick()
    if not undom:
        return True
    if r == 0 or _dom_packing(closed, undom, allowed) > r:
        return False
    pivot = min(_bits(undom), key=lambda v: ((closed[v] & allowed).bit_count(), v))
    cands = closed[pivot] & allowed
    for c in _bits(cands):
        if _can_dominate(closed, undom & ~closed[c], allowed, r - 1, ctr):
            return True
        allowed &= ~(1 << c)
    return False


def min_dominating(G: GraphLike, budget: Optional[int] = None, node_limit: int = DEFAULT_NODE_LIMIT) -> SolveResult:
    """Minimum dominating set by branch and bound; lexicographically least witness.

    Branches on an undominated vertex with the fewest remaining candidates
    (its closed neighbourhood) and prunes with a packing of undominated
    vertices whose candidate sets are disjoint.
    """
    nbr = _adjacency(G)
    n = len(nbr)
    if n == 0:
        return SolveResult(0, frozenset(), budget, 0)
    closed = [nbr[v] | 1 << v for v in range(n)]
    full = (1 << n) - 1
    ctr = _Counter(node_limit)
    top = n if budget is None else min(budget, n)
    k = _dom_packing(closed, full, full)
    while k <= top:
        if _can_dominate(closed, full, full, k, ctr):
            return SolveResult(k, _lex_least_dominating(closed, k, ctr), budget, ctr.count)
        k += 1
    return SolveResult(None, None, budget, ctr.count)


def _lex_least_dominating(closed: list[int], k: int, ctr: _Counter) -> frozenset[int]:
    n = len(closed)
    full = (1 << n) - 1
    undom, chosen, start = full, [], 0
    for step in range(k):
        for c in range(start, n):
            after = full & ~((1 << (c + 1)) - 1)
            if _can_dominate(closed, undom & ~closed[c], after, k - step - 1, ctr):
                chosen.append(c)
                undom &= ~closed[c]
                start = c + 1
                break
        else:
            raise AssertionError("feasible size but no lexicographic witness")
        if not undom:
            break
    return frozenset(chosen)


# -- power domination -----------------------------------------------------------


def _pdom_search(
    nbr: list[int],
    k: int,
    necessity: list[int],
    accept: Callable[[int], bool],
    ctr: _Counter,
) -> Optional[int]:
    """First k-subset in lexicographic order that meets every necessity mask and is accepted."""
    n = len(nbr)

    def packing(unhit: list[int]) -> int:
        used, count = 0, 0
        for m in sorted(unhit, key=int.bit_count):
            if not m & used:
                used |= m
                count += 1
        return count

    def rec(start: int, chosen: int, left: int) -> Optional[int]:
        ctr.tick()
        unhit = [m for m in necessity if not m & chosen]
        if left == 0:
            return chosen if not unhit and accept(chosen) else None
        tail = ~((1 << start) - 1)
        if any(not m & tail for m in unhit) or packing(unhit) > left:
            return None
        for c in range(start, n - left + 1):
            found = rec(c + 1, chosen | 1 << c, left - 1)
            if found is not None:
                return found
        return None

    return rec(0, 0, k)


def min_power_dominating(
    G: GraphLike,
    budget: Optional[int] = None,
    necessity: Optional[Iterable[Iterable[int]]] = None,
    node_limit: int = DEFAULT_NODE_LIMIT,
) -> SolveResult:
    """Minimum power dominating set by enumeration of increasing size.

    ``necessity`` lists vertex sets that every power dominating set must
    meet (see :func:`planedom.reductions.necessity_sets`); supplying them
    prunes the enumeration without changing the answer.
    """
    nbr = _adjacency(G)
    n = len(nbr)
    full = (1 << n) - 1
    nec = [to_mask(s, n) for s in (necessity or ())]
    ctr = _Counter(node_limit)
    top = n if budget is None else min(budget, n)
    for k in range(top + 1):
        found = _pdom_search(nbr, k, nec, lambda s: _power_mask(nbr, s) == full, ctr)
        if found is not None:
            return SolveResult(k, from_mask(found), budget, ctr.count)
    return SolveResult(None, None, budget, ctr.count)


def find_two_step_witness(
    G: GraphLike,
    k: int,
    necessity: Optional[Iterable[Iterable[int]]] = None,
    node_limit: int = DEFAULT_NODE_LIMIT,
) -> Optional[frozenset[int]]:
    """Lexicographically least k-set S with V = Gamma_1(Gamma(S)), if any."""
    nbr = _adjacency(G)
    full = (1 << len(nbr)) - 1
    nec = [to_mask(s, len(nbr)) for s in (necessity or ())]
    found = _pdom_search(
        nbr, k, nec, lambda s: _gamma1_mask(nbr, _closed_mask(nbr, s)) == full, _Counter(node_limit)
    )
    return None if found is None else from_mask(found)
