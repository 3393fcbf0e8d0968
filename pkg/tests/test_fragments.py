from __future__ import annotations

import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from oracles import random_network, random_pattern_network
from trcc8.fragments import (
    DECIDING_PATTERNS, PROP2, PROP3_EVEN_HNTPP, PROP3_ODD_HNTPP, PROP4, THEOREM1, Fragment,
    FragmentSpec, H_S_refine, Verdict, classify, decide_tractable, slice_fragments,
)
from trcc8.network import (
    Network, brute_force_scenarios, find_closed_scenario, is_algebraically_consistent,
)
from trcc8.projections import Semantics
from trcc8.relations import (
    BASICS, DC, EC, EQ, NTPP, NTPPI, PO, TPP, UNIVERSAL, h_C8, h_H8, in_Hntpp, in_Q8,
    members,
)
from trcc8.sequences import close_parts
from trcc8.verify import build_counterexample_network

F = Fragment
ALL_NAMES = frozenset(F)


def test_universal_network_is_in_every_fragment():
    report = classify(Network("abc", Semantics.partition(4)))
    assert report.per_index == [ALL_NAMES] * 4
    assert {PROP4, THEOREM1} <= set(report.patterns)


def test_n_class_relation_is_full_only():
    net = Network("ab", Semantics.neighbour(3))
    net.set("a", "b", (UNIVERSAL, TPP | NTPPI, UNIVERSAL))
    report = classify(net)
    assert report.per_index[1] == frozenset({F.FULL})
    assert report.patterns == []
    assert decide_tractable(net).verdict is Verdict.NOT_COVERED


def test_counterexample_is_not_decided_by_closure():
    net = build_counterexample_network()
    report = classify(net)
    assert len(report.per_index) == 4
    assert report.deciding_pattern() is None
    assert decide_tractable(net).verdict is Verdict.NOT_COVERED


def test_report_text():
    net = Network("ab", Semantics.neighbour(2))
    net.set("a", "b", (TPP | NTPPI, UNIVERSAL))
    assert str(classify(net)).splitlines() == ["1: FULL", "2: H8 Q8 C8 Hntpp FULL"]


def test_alternating_neighbour_patterns():
    net = Network("ab", Semantics.neighbour(3))
    # Q8 but not Hntpp at odd indices, Hntpp but not Q8 at index 2
    q_only = NTPP
    h_only = TPP | EQ
    assert in_Q8(q_only) and not in_Hntpp(q_only)
    assert in_Hntpp(h_only) and not in_Q8(h_only)
    net.set("a", "b", (q_only, h_only, q_only))
    report = classify(net)
    assert PROP3_EVEN_HNTPP in report.patterns
    assert PROP3_ODD_HNTPP not in report.patterns
    assert PROP2 in report.patterns
    net.set("a", "b", (h_only, q_only, h_only))
    assert classify(net).patterns == [PROP2, PROP3_ODD_HNTPP]


def test_prop2_forbids_adjacent_h8_only_slices():
    h8_only = TPP | NTPP | EQ  # in H8, not in Q8
    net = Network("ab", Semantics.neighbour(3))
    net.set("a", "b", (h8_only, h8_only, UNIVERSAL))
    assert PROP2 not in classify(net).patterns
    net.set("a", "b", (h8_only, UNIVERSAL, h8_only))
    assert PROP2 in classify(net).patterns


def test_theorem1_needs_h8_at_instants():
    q8_not_h8 = PO | NTPP | EQ
    net = Network("ab", Semantics.partition(2))
    net.set("a", "b", (q8_not_h8, UNIVERSAL))
    patterns = classify(net).patterns
    assert PROP4 in patterns and THEOREM1 not in patterns
    net.set("a", "b", (UNIVERSAL, q8_not_h8))
    assert THEOREM1 in classify(net).patterns


# --- H_S refinement ----------------------------------------------------------

def test_h_s_examples():
    spec = FragmentSpec((F.Q8, F.Q8), Semantics.neighbour(2))
    assert H_S_refine((PO | TPP, PO | TPP | NTPP), spec).parts == (PO, PO)
    assert H_S_refine((TPP, NTPPI), spec).parts == (TPP, NTPPI)
    spec_c = FragmentSpec((F.H8, F.C8), Semantics.partition(2))
    r = (EC | PO | EQ, EC | PO | EQ)
    assert H_S_refine(r, spec_c).parts == (h_H8(r[0]), h_C8(r[1])) == (EC, PO)


def test_spec_length_checked():
    with pytest.raises(ValueError):
        FragmentSpec((F.H8,), Semantics.neighbour(2))


@given(st.lists(st.integers(0, 255), min_size=2, max_size=2),
       st.sampled_from(list(product([F.H8, F.Q8, F.C8, F.HNTPP], repeat=2))))
def test_h_s_refines_componentwise(parts, frags):
    out = H_S_refine(parts, FragmentSpec(frags, Semantics.neighbour(2)))
    assert all(o & ~p == 0 for o, p in zip(out.parts, parts))


@pytest.mark.parametrize("frags", [(F.Q8, F.Q8), (F.Q8, F.H8), (F.H8, F.Q8)])
def test_neighbour_refinement_exhaustive(frags):
    _refinement_law(Semantics.neighbour(2), frags)


@pytest.mark.parametrize("frags", list(product([F.H8, F.Q8], [F.H8, F.Q8, F.C8])))
def test_partition_refinement_exhaustive(frags):
    _refinement_law(Semantics.partition(2), frags)


def _refinement_law(sem, frags):
    spec = FragmentSpec(frags, sem)
    checked = 0
    for r1, r2 in product(members(frags[0].contains), members(frags[1].contains)):
        if not (r1 and r2) or close_parts((r1, r2), sem) != (r1, r2):
            continue
        checked += 1
        assert H_S_refine((r1, r2), spec).is_conv_consistent(), (r1, r2)
    assert checked > 100


@pytest.mark.parametrize("frags", [(F.Q8, F.HNTPP), (F.HNTPP, F.Q8)])
def test_alternating_specs_are_closure_stable(frags):
    sem = Semantics.neighbour(2)
    spec = FragmentSpec(frags, sem)
    for r in product(members(frags[0].contains), members(frags[1].contains)):
        assert spec.conforms(close_parts(r, sem)) or 0 in close_parts(r, sem)


# --- decision procedure ------------------------------------------------------

def test_partition_h8_c8_example():
    net = Network("xy", Semantics.partition(2))
    net.set("x", "y", (TPP | NTPP | EQ, EC | PO | DC))
    decision = decide_tractable(net)
    assert decision.verdict is Verdict.SAT and decision.pattern == THEOREM1
    assert find_closed_scenario(net) is not None
    assert decision.witness.is_scenario() and decision.witness.refines(net)


def test_empty_closure_is_unsat():
    net = Network("xyz", Semantics.neighbour(2))
    net.set("x", "y", (TPP, TPP))
    net.set("y", "z", (TPP, TPP))
    net.set("x", "z", (DC, DC))
    decision = decide_tractable(net)
    assert decision.verdict is Verdict.UNSAT
    assert decision.closure.trivially_unsatisfiable()


def _pattern_case(seed: int):
    rng = random.Random(seed)
    pattern = rng.choice(DECIDING_PATTERNS)
    if pattern == THEOREM1:
        sem = Semantics.partition(rng.choice([2, 4]))
    else:
        sem = Semantics.neighbour(rng.randint(1, 4))
    return pattern, random_pattern_network(rng, rng.randint(2, 4), sem, pattern,
                                           rng.random() * 0.5)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32))
def test_decision_is_sound_against_brute_force(seed):
    pattern, net = _pattern_case(seed)
    report = classify(net)
    assert pattern in report.patterns
    decision = decide_tractable(net)
    assert decision.verdict is not Verdict.NOT_COVERED
    oracle = brute_force_scenarios(net, limit=1)
    assert (decision.verdict is Verdict.SAT) == bool(oracle)
    if decision.verdict is Verdict.SAT:
        w = decision.witness
        assert w.is_scenario() and w.refines(net) and is_algebraically_consistent(w)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32))
def test_slice_sets_match_membership(seed):
    rng = random.Random(seed)
    net = random_network(rng, 3, Semantics.neighbour(3), 0.3)
    for i, names in enumerate(slice_fragments(net)):
        values = [r for (x, y), r in net.slice(i + 1).items()]
        for f in F:
            assert (f in names) == all(f.contains(v) for v in values)


def test_every_fragment_contains_the_universal_relation():
    assert all(f.contains(UNIVERSAL) for f in F)
    assert F.FULL.contains(TPP | NTPPI)
    assert not F.HNTPP.contains(NTPP) and F.H8.contains(NTPP)
    assert all(F.C8.contains(b) for b in BASICS)
