"""Weight sequences: regularizations, growth conditions, relations."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wcalc.catalogue import bumpy_prefix, perturbed_gevrey, prefix_only
from wcalc.errors import NotLogConvex
from wcalc.sequences import (
    LogWeightSequence,
    check_beta3,
    check_carleman_consistency,
    check_in_LC,
    check_log_convex,
    check_moderate_growth,
    check_nq,
    derive_quotients,
    increasing_root_minorant,
    lc_minorant,
    lc_minorant_oracle,
    relation_approx,
    relation_preceq,
    relation_triangle,
)


@st.composite
def log_sequences(draw):
    n = draw(st.integers(min_value=3, max_value=50))
    vals = [0.0] + draw(
        st.lists(
            st.floats(min_value=-3.0, max_value=30.0),
            min_size=n - 1, max_size=n - 1,
        )
    )
    return LogWeightSequence(tuple(vals), None, 0, "random")


# -- regularizations -----------------------------------------------------

@given(log_sequences())
@settings(max_examples=500, deadline=None)
def test_lc_minorant_matches_pairwise_oracle(seq):
    hull = lc_minorant(seq)
    oracle = lc_minorant_oracle(seq)
    assert np.max(np.abs(hull.L - oracle)) <= 1e-9


@given(log_sequences())
@settings(max_examples=200, deadline=None)
def test_minorant_sandwich(seq):
    # L^lc <= L^I <= L pointwise
    hull = lc_minorant(seq).L
    incr = increasing_root_minorant(seq).L
    assert np.all(hull <= incr + 1e-9)
    assert np.all(incr <= seq.L + 1e-9)


@given(log_sequences())
@settings(max_examples=200, deadline=None)
def test_regularizations_idempotent(seq):
    hull = lc_minorant(seq)
    assert np.max(np.abs(lc_minorant(hull).L - hull.L)) <= 1e-12
    incr = increasing_root_minorant(seq)
    assert np.max(np.abs(increasing_root_minorant(incr).L - incr.L)) <= 1e-12


@given(log_sequences())
@settings(max_examples=200, deadline=None)
def test_increasing_root_minorant_has_increasing_roots(seq):
    mi = increasing_root_minorant(seq)
    ps = np.arange(1, mi.P + 1)
    roots = mi.L[1:] / ps
    assert np.all(np.diff(roots) >= -1e-12)


def test_hull_worked_example():
    seq = LogWeightSequence((0.0, 2.0, 1.0, 3.0), None, 0, "ex")
    assert np.allclose(lc_minorant(seq).L, [0.0, 0.5, 1.0, 3.0])


def test_increasing_root_worked_example():
    seq = LogWeightSequence((0.0, 3.0, 2.0), None, 0, "ex")
    # roots 3, 1 -> suffix min gives 1, 1 -> L = (0, 1, 2)
    assert np.allclose(increasing_root_minorant(seq).L, [0.0, 1.0, 2.0])


def test_lc_fixed_point_on_convex_input():
    g = LogWeightSequence.gevrey(2.0, 100)
    h = lc_minorant(g)
    assert h.log_values == g.log_values and h.tail == g.tail


def test_perturbed_family_keeps_tail_after_regularization():
    seq = perturbed_gevrey(2.0)
    hull = lc_minorant(seq)
    assert hull.tail is not None
    assert check_log_convex(hull).holds


# -- condition verdicts --------------------------------------------------

def test_conditions_on_gevrey():
    for s, nq_expected in ((1.0, False), (1.5, True), (2.0, True), (3.0, True)):
        g = LogWeightSequence.gevrey(s, 200)
        assert check_log_convex(g).holds
        assert check_in_LC(g).holds
        assert check_moderate_growth(g).holds
        v = check_nq(g)
        assert v.holds == nq_expected and v.fails == (not nq_expected)
        assert check_beta3(g).holds


def test_nq_bracket_gevrey2_contains_basel_constant():
    g = LogWeightSequence.gevrey(2.0, 200)
    w = check_nq(g).witness
    assert w["sum_low"] <= math.pi ** 2 / 6 <= w["sum_high"]
    assert w["sum_high"] - w["sum_low"] < 0.02


def test_nq_fails_power_of_two_weights():
    # M_p = 2^p: mu constant, sum 1/mu diverges
    from wcalc.tails import FactorialPower

    seq = LogWeightSequence.from_tail(FactorialPower(0.0, 2.0), 100, "2^p")
    assert check_nq(seq).fails


def test_carleman_consistency_requires_log_convex():
    with pytest.raises(NotLogConvex):
        check_carleman_consistency(bumpy_prefix())


def test_carleman_consistency_on_catalogue():
    from wcalc.catalogue import sequence_battery

    for name, seq in sequence_battery().items():
        if check_log_convex(seq).holds and seq.tail is not None:
            assert check_carleman_consistency(seq).holds, name


def test_moderate_growth_witness_constant_is_valid():
    g = LogWeightSequence.gevrey(1.0, 120)
    v = check_moderate_growth(g)
    C = v.witness["C"]
    L = g.L
    for j in range(0, 60):
        for k in range(0, 60):
            assert L[j + k] <= (j + k) * math.log(C) + L[j] + L[k] + 1e-9


def test_mg_fails_power_index():
    from wcalc.catalogue import power_index

    assert check_moderate_growth(power_index(1.0, 2.0)).fails


def test_prefix_only_conditions_are_undecided_or_prefix_based():
    seq = prefix_only(2.0)
    assert check_log_convex(seq).holds       # prefix evidence only
    v = check_nq(seq)
    assert v.inconclusive and "partial_sum" in v.witness


def test_beta3_fails_constant_quotient():
    from wcalc.tails import FactorialPower

    seq = LogWeightSequence.from_tail(FactorialPower(0.0, 3.0), 100, "3^p")
    assert check_beta3(seq).fails


# -- relations -----------------------------------------------------------

def test_relation_orderings():
    g1 = LogWeightSequence.gevrey(1.0, 150)
    g2 = LogWeightSequence.gevrey(2.0, 150)
    assert relation_preceq(g1, g2).holds
    assert relation_preceq(g2, g1).fails
    assert relation_triangle(g1, g2).holds
    assert relation_triangle(g2, g1).fails
    assert relation_approx(g1, g2).fails


def test_relation_approx_scaled_family():
    from wcalc.tails import FactorialPower

    g = LogWeightSequence.gevrey(2.0, 150)
    h = LogWeightSequence.from_tail(FactorialPower(2.0, 3.0), 150, "scaled")
    assert relation_preceq(g, h).holds
    assert relation_approx(g, h).holds
    assert relation_triangle(g, h).fails


def test_relation_reflexive():
    g = LogWeightSequence.gevrey(1.5, 100)
    assert relation_preceq(g, g).holds
    assert relation_approx(g, g).holds


# -- bookkeeping ---------------------------------------------------------

def test_quotients():
    g = LogWeightSequence.gevrey(1.0, 20)
    q = derive_quotients(g)
    assert q.mu[0] == pytest.approx(1.0)
    assert q.mu[5] == pytest.approx(5.0)   # mu_p = p for p!
    assert q.m_log[5] == pytest.approx(0.0)


def test_tail_consistency_enforced():
    from wcalc.tails import FactorialPower

    with pytest.raises(ValueError):
        LogWeightSequence((0.0, 0.5, 3.0, 9.0), FactorialPower(2.0), 0, "bad")


def test_json_round_trip():
    g = LogWeightSequence.gevrey(2.0, 50)
    d = g.to_json()
    assert d["family"] == "gevrey" and d["s"] == 2.0 and d["pmax"] == 50
    d2 = prefix_only(2.0).to_json()
    assert len(d2["log_values"]) == 61
