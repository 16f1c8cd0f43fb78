import json
from fractions import Fraction
from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from shapely.geometry import LineString, box

from oracles import truth_table
from planedom.instance import (
    Clause,
    ForcedUnsat,
    GenerationError,
    GenParams,
    InstanceDecodeError,
    Layout,
    Normalized,
    Pm3SatInstance,
    ResourceLimitError,
    check_pair_condition,
    decode,
    encode,
    enumerate_family,
    evaluate,
    generate,
    make_instance,
    normalize,
    solve_dpll,
    solve_exhaustive,
    solve_sat,
    validate,
)
from planedom.workbench import u3, u3_minus

F = Fraction


def single_var() -> Pm3SatInstance:
    return Pm3SatInstance(1, (), Layout({0: (F(0), F(8))}))


# -- validation ------------------------------------------------------------------


def test_single_variable_no_clauses_validates():
    assert validate(single_var()).passed


def test_overlapping_intervals_reported():
    inst = Pm3SatInstance(2, (), Layout({0: (F(0), F(5)), 1: (F(4), F(9))}))
    rep = validate(inst)
    assert not rep.passed
    assert any("intervals overlap" in m for m in rep.messages())


def _shapely_layout_ok(inst: Pm3SatInstance) -> bool:
    """Independent geometric check of the layout rules with shapely."""
    lay = inst.layout
    segs = {v: LineString([(float(lo), 0), (float(hi), 0)]) for v, (lo, hi) in lay.intervals.items()}
    boxes = {cid: box(float(r[0]), float(r[2]), float(r[1]), float(r[3])) for cid, r in lay.rects.items()}
    for a, b in combinations(segs.values(), 2):
        if a.intersects(b):
            return False
    for a, b in combinations(boxes.values(), 2):
        if a.intersects(b):
            return False
    for c in inst.clauses:
        r = lay.rects[c.id]
        if c.positive != (r[2] > 0) or (not c.positive and r[3] >= 0):
            return False
        for v in c.vars:
            x = float(lay.legs[(c.id, v)])
            y_end = float(r[2] if c.positive else r[3])
            leg = LineString([(x, 0), (x, y_end)])
            if not leg.intersects(segs[v]) or not leg.intersects(boxes[c.id]):
                return False
            for cid, b in boxes.items():
                if cid != c.id and leg.intersects(b):
                    return False
            for w, s in segs.items():
                if w != v and leg.intersects(s):
                    return False
    return True


def test_u3_validates_and_matches_geometric_oracle():
    inst = u3()
    assert validate(inst).passed
    assert _shapely_layout_ok(inst)


def test_geometric_oracle_agrees_on_generated_instances():
    for seed in range(30):
        inst = generate(GenParams(5, 6, seed=seed))
        assert validate(inst).passed
        assert _shapely_layout_ok(inst)


def test_overlapping_rectangles_reported():
    inst = u3()
    lay = inst.layout
    # stretch the spanning box down onto an inner one
    outer = next(c.id for c in inst.clauses if c.positive and c.vars == (0, 2))
    inner = next(c.id for c in inst.clauses if c.positive and c.vars == (0, 1))
    rects = dict(lay.rects)
    rects[outer] = (rects[outer][0], rects[outer][1], rects[inner][2], rects[outer][3])
    bad = Pm3SatInstance(inst.n, inst.clauses, Layout(lay.intervals, rects, lay.legs))
    rep = validate(bad)
    assert rep.failed("rectangles")


def test_unnormalized_clause_rejected_by_validate():
    inst = Pm3SatInstance(2, (Clause(0, "pos", (0,)),), Layout({0: (F(0), F(8)), 1: (F(10), F(18))}))
    assert validate(inst).failed("clauses normalized")


# -- pair condition ------------------------------------------------------------------


def test_pair_condition_single_clause():
    assert check_pair_condition([Clause(0, "pos", (1, 2))]).passed


def test_pair_condition_two_clause_shared_pair_fails():
    assert not check_pair_condition([Clause(0, "pos", (1, 2)), Clause(1, "pos", (1, 2, 3))]).passed


def test_pair_condition_two_three_clauses_pass():
    assert check_pair_condition([Clause(0, "pos", (1, 2, 3)), Clause(1, "pos", (1, 2, 4))]).passed


def test_pair_condition_opposite_polarity_independent():
    assert check_pair_condition([Clause(0, "pos", (1, 2)), Clause(1, "neg", (1, 2))]).passed


# -- normalization ----------------------------------------------------------------


def test_normalize_contradictory_units():
    assert isinstance(normalize([Clause(0, "pos", (1,)), Clause(1, "neg", (1,))], 2), ForcedUnsat)


def test_normalize_drops_superset_clause():
    out = normalize([Clause(0, "pos", (1, 2)), Clause(1, "pos", (1, 2, 3))], 4)
    assert isinstance(out, Normalized)
    assert [(c.polarity, c.vars) for c in out.clauses] == [("pos", (1, 2))]
    assert out.forced == {}


def test_normalize_unit_then_subsumption():
    out = normalize([Clause(0, "pos", (0,)), Clause(1, "pos", (0, 1))], 2)
    assert isinstance(out, Normalized)
    assert out.clauses == ()
    assert out.forced == {0: True}
    assert truth_table(2, [("pos", (0,)), ("pos", (0, 1))]) == [a[0] for a in product((False, True), repeat=2)]


clause_st = st.builds(
    lambda pol, vs: (pol, tuple(sorted(vs))),
    st.sampled_from(["pos", "neg"]),
    st.sets(st.integers(0, 5), min_size=1, max_size=3),
)


def _as_clauses(raw):
    return [Clause(i, p, vs) for i, (p, vs) in enumerate(raw)]


@settings(max_examples=300, deadline=None)
@given(st.lists(clause_st, max_size=8))
def test_normalize_preserves_truth_table(raw):
    n = 6
    out = normalize(_as_clauses(raw), n)
    before = truth_table(n, raw)
    if isinstance(out, ForcedUnsat):
        assert not any(before)
        return
    after = []
    for a in product((False, True), repeat=n):
        ok_forced = all(a[v] == val for v, val in out.forced.items())
        after.append(ok_forced and evaluate(out.clauses, a))
    assert after == before
    assert all(len(c.vars) >= 2 for c in out.clauses)


@settings(max_examples=200, deadline=None)
@given(st.lists(clause_st, max_size=8))
def test_normalize_idempotent(raw):
    once = normalize(_as_clauses(raw), 6)
    if isinstance(once, ForcedUnsat):
        return
    twice = normalize(once.clauses, 6)
    assert isinstance(twice, Normalized)
    assert twice.clauses == once.clauses
    assert twice.forced == {}


# -- evaluation and SAT -------------------------------------------------------------


def test_evaluate_empty_formula():
    assert evaluate([], (False, True))


def test_evaluate_all_false_falsifies_positive_clause():
    assert not evaluate([Clause(0, "pos", (0, 1))], (False, False))


def test_u3_has_no_satisfying_assignment():
    inst = u3()
    assert not any(evaluate(inst, a) for a in product((False, True), repeat=3))
    assert solve_sat(inst) is None
    assert solve_sat(inst, mode="dpll") is None


def test_empty_formula_sat_all_false():
    assert solve_sat(single_var()) == (False,)


def test_u3_minus_clause_sat():
    inst = u3_minus()
    a = solve_sat(inst)
    assert a is not None and evaluate(inst, a)


def test_exhaustive_limit():
    with pytest.raises(ResourceLimitError):
        solve_exhaustive(25, [])


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 8), st.lists(clause_st, max_size=10))
def test_solvers_agree_with_truth_table(n, raw):
    raw = [(p, vs) for p, vs in raw if max(vs) < n]
    clauses = _as_clauses(raw)
    any_sat = any(truth_table(n, raw))
    for a in (solve_exhaustive(n, clauses), solve_dpll(n, clauses)):
        if any_sat:
            assert a is not None and evaluate(clauses, a)
        else:
            assert a is None


# -- generation --------------------------------------------------------------------


def test_generate_single_variable():
    inst = generate(GenParams(1, 0, seed=3))
    assert inst.n == 1 and inst.clauses == ()


def test_generate_n4_m3_seed7_validates():
    inst = generate(GenParams(4, 3, seed=7))
    assert validate(inst).passed


def test_generate_deterministic():
    p = GenParams(5, 5, seed=11)
    assert encode(generate(p)) == encode(generate(p))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.integers(0, 7), st.integers(0, 10**6), st.sampled_from([2, 3]))
def test_generated_instances_are_valid(n, m, seed, size):
    try:
        inst = generate(GenParams(n, m, max_clause_size=size, seed=seed))
    except GenerationError:
        return
    assert validate(inst).passed
    assert check_pair_condition(inst).passed
    out = normalize(inst.clauses, inst.n)
    assert isinstance(out, Normalized) and len(out.clauses) == len(inst.clauses)


def test_family_small_counts_and_validity():
    fam = list(enumerate_family(3, 4))
    assert len(fam) == 79
    assert all(validate(i).passed and check_pair_condition(i).passed for i in fam)


# -- codec ----------------------------------------------------------------------------


def test_roundtrip_u3():
    inst = u3()
    assert decode(encode(inst)) == inst


def test_roundtrip_empty_clause_list():
    inst = make_instance(2, [])
    assert decode(encode(inst)) == inst


def test_missing_field_named():
    doc = json.loads(encode(u3()))
    del doc["layout"]
    with pytest.raises(InstanceDecodeError, match="layout"):
        decode(json.dumps(doc))


def test_truncated_text_reports_position():
    text = encode(u3())
    with pytest.raises(InstanceDecodeError, match="line"):
        decode(text[: len(text) // 2])


def test_unknown_field_rejected():
    doc = json.loads(encode(u3()))
    doc["layout"]["colour"] = "red"
    with pytest.raises(InstanceDecodeError, match="colour"):
        decode(json.dumps(doc))


def test_bad_polarity_names_clause():
    doc = json.loads(encode(u3()))
    doc["clauses"][2]["polarity"] = "both"
    with pytest.raises(InstanceDecodeError, match=r"clauses\[2\]"):
        decode(json.dumps(doc))
