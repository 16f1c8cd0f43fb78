import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles as O
from planedom.embed import natural_embedding
from planedom.instance import Clause, ResourceLimitError, make_instance
from planedom.reductions import build, build_pdom, necessity_sets
from planedom.solvers import (
    closed_neighborhood,
    find_two_step_witness,
    gamma1_step,
    is_dominating,
    is_power_dominating,
    min_dominating,
    min_power_dominating,
    power_closure,
    power_rounds,
    s1,
    two_step_saturation,
)
from planedom.triangulate import triangulate_protected
from planedom.workbench import u3, u3_minus

OCT = O.octahedron()  # 0 v, 1 vbar, 2 u, 3 v', 4 vbar', 5 u'
C5 = O.cycle(5)
P5 = O.path(5)
K4 = O.complete(4)
ALL = lambda G: frozenset(range(len(G)))  # noqa: E731


# -- operators ---------------------------------------------------------------------------


def test_closed_neighborhood_examples():
    assert closed_neighborhood(OCT, ()) == frozenset()
    assert closed_neighborhood(O.star(4), {0}) == ALL(O.star(4))
    assert closed_neighborhood(OCT, {0}) == ALL(OCT) - {3}


def test_is_dominating_examples():
    assert is_dominating(C5, range(5))
    assert all(is_dominating(K4, {v}) for v in range(4))
    assert not any(is_dominating(C5, {v}) for v in range(5))


def test_s1_examples():
    assert s1(OCT, range(6)) == frozenset()
    assert s1(O.path(3), {0, 1}) == {1}
    assert {4, 5} <= s1(OCT, closed_neighborhood(OCT, {0}))


def test_gamma1_examples():
    assert gamma1_step(OCT, range(6)) == ALL(OCT)
    assert gamma1_step(OCT, closed_neighborhood(OCT, {0})) == ALL(OCT)
    first = gamma1_step(C5, closed_neighborhood(C5, {0}))
    assert len(first - closed_neighborhood(C5, {0})) == 2
    assert first == ALL(C5)


def test_power_closure_examples():
    assert power_closure(OCT, ()) == frozenset()
    assert power_closure(P5, {0}) == ALL(P5)
    i = make_instance(1, [])
    r = build_pdom(i)
    assert power_closure(r.graph, {r.graph.vertex("v:0")}) == ALL(r.graph.rotations)


def test_two_step_examples():
    assert two_step_saturation(C5, range(5))
    assert two_step_saturation(OCT, {0})
    assert not two_step_saturation(P5, {0})
    assert power_rounds(P5, {0}) == 3


def test_single_vertex_power_domination_needs_the_vertex():
    G = [set()]
    assert not is_power_dominating(G, ())
    assert min_power_dominating(G).size == 1


def test_plane_graph_input_accepted():
    i = make_instance(1, [])
    G = build(kind="dom", inst=i).graph
    assert is_dominating(G, {G.vertex("w:0")})


def test_out_of_range_vertex_rejected():
    with pytest.raises(ValueError):
        closed_neighborhood(K4, {7})


# -- optimisers: fixed examples -------------------------------------------------------------


def test_min_dominating_small():
    assert min_dominating(K4).size == 1
    res = min_dominating(C5)
    assert res.size == 2 and res.witness == frozenset(O.brute_gamma(C5)[1])


def test_min_dominating_budget_exceeded():
    res = min_dominating(C5, budget=1)
    assert res.exceeded and res.lower_bound == 2


def test_node_limit():
    rng = random.Random(4)
    G = O.random_graph(rng, 40, 0.08)
    with pytest.raises(ResourceLimitError):
        min_dominating(G, node_limit=5)
    with pytest.raises(ResourceLimitError):
        min_power_dominating(G, node_limit=5)


def test_min_power_dominating_k4():
    assert min_power_dominating(K4).size == 1


def _triangulated(kind, inst):
    r = build(kind, inst)
    T = triangulate_protected(natural_embedding(inst, r), r.protected)
    return r, T


def test_dom_u3_needs_four():
    _, T = _triangulated("dom", u3())
    adj = [set(T.neighbors(v)) for v in range(T.n)]
    assert T.n == 24
    assert not any(O.dominates(adj, S) for k in range(4) for S in combinations(range(T.n), k))
    res = min_dominating(T, budget=3)
    assert res.exceeded
    assert min_dominating(T).size == 4


def test_pdom_u3_needs_four():
    r, T = _triangulated("pdom", u3())
    adj = [set(T.neighbors(v)) for v in range(T.n)]
    assert O.brute_gamma_p(adj, max_k=3) is None
    assert min_power_dominating(T, budget=3).exceeded
    assert min_power_dominating(T, budget=3, necessity=necessity_sets(T, r.blocked)).exceeded


def test_pdom_u3_minus_clause_exactly_three():
    r, T = _triangulated("pdom", u3_minus())
    adj = [set(T.neighbors(v)) for v in range(T.n)]
    assert O.brute_gamma_p(adj, max_k=2) is None
    res = min_power_dominating(T, necessity=necessity_sets(T, r.blocked))
    assert res.size == 3
    assert len(O.observed(adj, res.witness)) == T.n
    assert find_two_step_witness(T, 3) is not None


# -- properties ---------------------------------------------------------------------------


@st.composite
def graph_and_sets(draw, max_n=10):
    n = draw(st.integers(1, max_n))
    pairs = list(combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    adj = O.adjacency(n, [e for e, keep in zip(pairs, mask) if keep])
    S = draw(st.sets(st.integers(0, n - 1)))
    T = draw(st.sets(st.integers(0, n - 1)))
    return adj, S, S | T


@settings(max_examples=400, deadline=None)
@given(graph_and_sets())
def test_operator_algebra(data):
    G, S, T = data
    for op in (closed_neighborhood, gamma1_step, power_closure):
        assert op(G, S) <= op(G, T)
    assert closed_neighborhood(G, S) >= S
    assert gamma1_step(G, S) >= S
    P = power_closure(G, S)
    assert gamma1_step(G, P) == P
    assert power_closure(G, P) >= P
    assert power_rounds(G, S) <= len(G)
    assert P == frozenset(O.observed(G, S))
    assert s1(G, S) <= S
    if is_dominating(G, S):
        assert is_power_dominating(G, S)


def test_reseeding_the_closure_can_grow_it():
    # a leaf of K_{1,3} observes the centre, which then has two unobserved
    # neighbours and is stuck; seeding with the closure itself observes all
    star = O.star(3)
    P = power_closure(star, {1})
    assert P == {0, 1}
    assert gamma1_step(star, P) == P
    assert power_closure(star, P) == ALL(star)


@settings(max_examples=150, deadline=None)
@given(graph_and_sets(max_n=9))
def test_optimisers_match_brute_force(data):
    G = data[0]
    k, S = O.brute_gamma(G)
    res = min_dominating(G)
    assert res.size == k and res.witness == frozenset(S)
    kp, Sp = O.brute_gamma_p(G)
    resp = min_power_dominating(G)
    assert resp.size == kp and resp.witness == frozenset(Sp)
    assert resp.size <= res.size


def test_necessity_pruning_agrees_with_plain_enumeration():
    cases = [
        make_instance(2, [Clause(0, "pos", (0, 1))]),
        make_instance(2, [Clause(0, "pos", (0, 1)), Clause(1, "neg", (0, 1))]),
        make_instance(3, [Clause(0, "pos", (0, 1, 2)), Clause(1, "neg", (0, 2))]),
    ]
    for inst in cases:
        r, T = _triangulated("pdom", inst)
        plain = min_power_dominating(T)
        pruned = min_power_dominating(T, necessity=necessity_sets(T, r.blocked))
        assert plain.size == pruned.size == inst.n
        assert plain.witness == pruned.witness
