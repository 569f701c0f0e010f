"""Acceptance battery: thirteen end-to-end criteria with fixed tolerances.

Each test records one PASS/FAIL line (printed in the terminal summary) and
asserts the criterion.  Tolerances and runtime budgets are stated inline.
"""

import functools
import math
import time

import numpy as np

from wcalc.catalogue import gevrey, matrix_from_rows, sequence_battery
from wcalc.convex import ConvexPL, young_conjugate
from wcalc.fourier import (
    check_lemma53_i,
    decay_exponent_fit,
    reference_spectrum_standard_bump,
    standard_bump,
    theorem51_harness,
)
from wcalc.matrices import (
    MultiIndexChain,
    build_gevrey_matrix,
    check_matrix_condition,
    check_pseudo_mg,
    check_stability_theorem,
    integer_step_identity_error,
    min_convolution_omega_gap,
    multi_index_step,
)
from wcalc.quasi import (
    class_nq_verdict,
    construct_minorant,
    matrix_nq_verdict,
    minorant_checkpoints,
)
from wcalc.sequences import (
    LogWeightSequence,
    check_nq,
    lc_minorant,
    lc_minorant_oracle,
)
from wcalc.weightfuncs import (
    associated_function,
    check_omega_conditions,
    make_power_log_weight,
    omega_ratio_range,
    sequence_from_weight,
)

RESULTS: list[str] = []


def criterion(num, name):
    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                detail = fn(*args, **kwargs)
            except BaseException as exc:
                RESULTS.append(f"criterion {num:02d} {name}: FAIL ({exc})")
                raise
            tag = f" ({detail})" if detail else ""
            RESULTS.append(f"criterion {num:02d} {name}: PASS{tag}")
        return wrapper
    return deco


def _random_convex_pl(rng):
    n = int(rng.integers(1, 65))
    xs = np.cumsum(rng.uniform(0.05, 3.0, n + 1)) + rng.uniform(-5, 5)
    slopes = np.cumsum(rng.uniform(0.05, 2.0, n)) + rng.uniform(-4, 4)
    v0 = rng.uniform(-3, 3)
    vals = np.concatenate([[v0], v0 + np.cumsum(slopes * np.diff(xs))])
    if rng.random() < 0.5:
        left, right = -math.inf, math.inf
    else:
        left = slopes[0] - rng.uniform(0.1, 2.0)
        right = slopes[-1] + rng.uniform(0.1, 2.0)
    return ConvexPL(tuple(zip(xs, vals)), left, right)


@criterion(1, "conjugate involution")
def test_conjugate_involution_bulk():
    # 1000 random convex PL functions, <= 64 breakpoints, tol 1e-12, < 5 s
    rng = np.random.default_rng(20260823)
    t0 = time.perf_counter()
    for _ in range(1000):
        f = _random_convex_pl(rng)
        assert young_conjugate(young_conjugate(f)).is_close(
            f.canonical(), tol=1e-12
        )
    dt = time.perf_counter() - t0
    assert dt < 5.0
    return f"1000 functions in {dt:.2f} s"


def _random_log_sequence(rng):
    n = int(rng.integers(2, 51))
    L = np.concatenate([[0.0], np.cumsum(rng.uniform(-0.5, 2.0, n))])
    L[1] = abs(L[1])          # normalization: M_0 = 1 <= M_1
    return LogWeightSequence(tuple(L), None, 0, "")


@criterion(2, "hull equals pairwise-infimum oracle")
def test_hull_oracle_equivalence():
    # 500 random log-sequences of length <= 50, log-domain tol 1e-9, < 5 s
    rng = np.random.default_rng(7)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(500):
        seq = _random_log_sequence(rng)
        dev = float(np.max(np.abs(lc_minorant(seq).L - lc_minorant_oracle(seq))))
        worst = max(worst, dev)
        assert dev <= 1e-9
    dt = time.perf_counter() - t0
    assert dt < 5.0
    return f"max deviation {worst:.2e}, {dt:.2f} s"


@criterion(3, "row at parameter 1 reconstructs the sequence")
def test_weight_row_reconstruction():
    # p!^s for s = 1, 2, 3 at P = 100, tol 1e-9 in log domain
    worst = 0.0
    for s in (1.0, 2.0, 3.0):
        g = gevrey(s, 100)
        row = sequence_from_weight(associated_function(g), 1.0, 100)
        worst = max(worst, float(np.max(np.abs(row.L - g.L))))
    assert worst <= 1e-9
    return f"max log deviation {worst:.2e}"


@criterion(4, "integer-parameter chain identity")
def test_integer_parameter_chain_identity():
    # rows at integer l satisfy the resampling identity, tol 1e-9
    worst = 0.0
    for s in (1.0, 2.0, 3.0):
        base = matrix_from_rows((gevrey(s, 100),), (1.0,))
        for l in (2.0, 3.0):
            chain = multi_index_step(MultiIndexChain(base), l)
            worst = max(worst, integer_step_identity_error(chain))
    assert worst <= 1e-9
    return f"max identity error {worst:.2e}"


@criterion(5, "derived rows stay within a bounded weight band")
def test_derived_weight_equivalence_band():
    # omega of the l-row vs omega of the base, ratio in [1/8, 8] on [e, 1e6]
    t0 = time.perf_counter()
    g = gevrey(2.0, 1200)
    w = associated_function(g)
    ranges = {}
    for l in (0.5, 2.0):
        row = sequence_from_weight(w, l, int(1200 / max(l, 1.0)))
        lo, hi = omega_ratio_range(associated_function(row), w, math.e, 1e6)
        ranges[l] = (lo, hi)
        assert 1.0 / 8.0 <= lo <= hi <= 8.0, (l, lo, hi)
    dt = time.perf_counter() - t0
    assert dt < 1.0
    return f"l=0.5 ratio {ranges[0.5][0]:.3f}..{ranges[0.5][1]:.3f}, " \
           f"l=2 ratio {ranges[2.0][0]:.3f}..{ranges[2.0][1]:.3f}, {dt:.2f} s"


@criterion(6, "series divergence verdicts with certified bracket")
def test_divergence_verdicts_with_bracket():
    # holds iff s > 1; the s = 2 partial-sum bracket contains pi^2/6,
    # bracket width <= 0.02 at P = 200
    for s in (1.0, 1.5, 2.0, 3.0):
        v = check_nq(gevrey(s, 200))
        assert v.holds == (s > 1.0), s
    w = check_nq(gevrey(2.0, 200)).witness
    lo, hi = w["sum_low"], w["sum_high"]
    basel = math.pi ** 2 / 6.0
    assert lo <= basel <= hi
    assert hi - lo <= 0.02
    return f"bracket [{lo:.6f}, {hi:.6f}] width {hi - lo:.2e}"


@criterion(7, "matrix divergence quantifiers")
def test_matrix_divergence_quantifiers():
    two = matrix_from_rows((gevrey(1.0), gevrey(2.0)), (1.0, 2.0))
    assert matrix_nq_verdict(two, "roumieu").holds
    assert matrix_nq_verdict(two, "beurling").fails
    G = build_gevrey_matrix((1.0, 2.0, 3.0))
    assert matrix_nq_verdict(G, "roumieu").holds
    assert matrix_nq_verdict(G, "beurling").holds
    return "exact verdict match on both matrices"


@criterion(8, "hull and root routes agree across the battery")
def test_route_agreement_battery():
    # RoutesDisagree would propagate out of class_nq_verdict
    battery = sequence_battery()
    assert len(battery) >= 20
    for name, seq in battery.items():
        class_nq_verdict(seq)
    return f"{len(battery)} families, no disagreement"


@criterion(9, "constructive minorant at scale")
def test_minorant_construction_scale():
    # rows p!^(1+1/q), q = 1..4, P = 5000; q >= 3 regimes completed;
    # roots non-decreasing; tail sum <= 1; scaled-row domination; < 30 s
    t0 = time.perf_counter()
    labels = tuple(1.0 / q for q in (4, 3, 2, 1))
    rows = tuple(gevrey(1 + 1.0 / q, 5000) for q in (4, 3, 2, 1))
    M = matrix_from_rows(rows, labels)
    trace = construct_minorant(M)
    assert trace.q_completed >= 3
    assert trace.tail_sum_bound <= 1.0
    ps, roots = minorant_checkpoints(trace, M)
    assert np.all(np.diff(roots) >= -1e-12)
    for q in range(1, 5):
        row = M.row(1.0 / q)
        lo = trace.b[q - 2] if q >= 2 else 1
        sel = ps >= lo
        bound = -math.log(q) + np.array([row.root(p) for p in ps[sel]])
        assert np.max(roots[sel] - bound) <= 1e-9, q
    dt = time.perf_counter() - t0
    assert dt < 30.0
    return f"q={trace.q_completed}, tail sum {trace.tail_sum_bound:.6f}, " \
           f"{dt:.2f} s"


@criterion(10, "chain stability")
def test_chain_stability():
    v = check_stability_theorem(build_gevrey_matrix((1.0, 2.0, 3.0), 200))
    assert v.holds
    for name, sub in v.witness["parts"].items():
        assert sub["status"] == "holds", name
    return f"{len(v.witness['parts'])} sub-verdicts hold"


@criterion(11, "pairwise-growth surrogate agreement")
def test_pseudo_growth_agreement():
    from wcalc.catalogue import matrix_battery

    checked = 0
    for name, M in matrix_battery().items():
        v = check_pseudo_mg(M)
        direct = check_matrix_condition(M, "mg_roumieu")
        if not (v.inconclusive or direct.inconclusive):
            assert v.status is direct.status, name
            checked += 1
    gap = min_convolution_omega_gap(gevrey(1.0, 100))
    assert gap <= 1e-9
    return f"{checked} matrices agree, doubling gap {gap:.2e}"


@criterion(12, "spectral battery")
def test_spectral_battery():
    t0 = time.perf_counter()
    # (a) decay exponent of the standard bump spectrum, oracle-checked
    xis = np.geomspace(1e2, 1e4, 7)
    slope = decay_exponent_fit(xis, reference_spectrum_standard_bump(xis))
    assert 0.4 <= slope <= 0.6
    # (b) derivative bounds transfer from the weighted spectral norm
    v = check_lemma53_i(standard_bump(), gevrey(2.0, 1200), 0.1)
    assert v.holds and v.witness["tightest_ratio"] <= 1.0
    # (c) three-way membership agreement: 5 bumps + 2 negative controls
    G = build_gevrey_matrix((1.0, 1.5, 2.0, 2.5, 3.0), 200)
    rep = theorem51_harness(G)
    assert rep["status"] == "holds"
    assert rep["disagreements"] == []
    bumps = [k for k in rep["functions"] if k.startswith("bump:")]
    controls = [k for k in rep["functions"] if k.startswith("control:")]
    assert len(bumps) >= 5 and len(controls) == 2
    for k in controls:
        assert rep["functions"][k]["fourier_side"] == "negative"
    dt = time.perf_counter() - t0
    assert dt < 60.0
    return f"decay exponent {slope:.3f}, ratio " \
           f"{v.witness['tightest_ratio']:.3f}, {len(bumps)} bumps, {dt:.1f} s"


@criterion(13, "power-log weight condition table")
def test_weight_condition_table():
    conds = check_omega_conditions(make_power_log_weight(2.0))
    for name in ("omega0", "omega1", "omega2", "omega3", "omega4",
                 "omega5", "omega7", "omega_nq"):
        assert conds[name].holds, name
    assert conds["omega6"].fails
    return "omega6 fails, all others hold"
