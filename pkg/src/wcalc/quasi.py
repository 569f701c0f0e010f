"""Non-quasianalyticity verdicts and the constructive minorant machinery.

The central object is a recursion that, given a decreasing family of
non-quasianalytic rows, constructs a single non-quasianalytic minorant
lying strictly below every row.  The switch indices of the recursion grow
extremely fast (beyond 1e10 for typical rows), so all index searches are
done on the symbolic tails with certified integral bounds; the stored
prefix of the result is just a window into the constructed object.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import verdicts
from .errors import (
    ClassMembershipFailed,
    InterpolantUnverified,
    RoutesDisagree,
    TailNotCertified,
    TruncationExhausted,
)
from .matrices import WeightMatrix, relation_matrix
from .sequences import (
    LogWeightSequence,
    check_log_convex,
    check_nq,
    increasing_root_minorant,
    lc_minorant,
    relation_triangle,
    _root_series_verdict,
)
from .tails import geometric_mean, root_gap_limit
from .verdicts import Verdict


def class_nq_verdict(seq: LogWeightSequence) -> Verdict:
    """Non-quasianalyticity of the generated class, via both equivalent
    routes: the quotient series of the log-convex minorant, and the root
    series of the increasing-root minorant."""
    via_hull = check_nq(lc_minorant(seq))
    via_roots = _root_series_verdict(increasing_root_minorant(seq))
    if via_hull.status is not via_roots.status:
        if not (via_hull.inconclusive or via_roots.inconclusive):
            raise RoutesDisagree(
                f"{seq.label}: hull route {via_hull.status.value}, "
                f"root route {via_roots.status.value}"
            )
    decided = via_hull if not via_hull.inconclusive else via_roots
    return verdicts.Verdict(
        decided.status,
        {"hull_route": via_hull.to_json(), "root_route": via_roots.to_json()},
        decided.reason,
    )


def matrix_nq_verdict(M: WeightMatrix, variant: str) -> Verdict:
    """Roumieu: some row suffices; Beurling: every row is needed."""
    if variant not in ("roumieu", "beurling"):
        raise ValueError(variant)
    per_row = {
        f"x={lbl:g}": class_nq_verdict(row)
        for lbl, row in zip(M.labels, M.rows)
    }
    statuses = [v.status for v in per_row.values()]
    if variant == "roumieu":
        if any(v.holds for v in per_row.values()):
            x0 = next(k for k, v in per_row.items() if v.holds)
            return verdicts.holds(witness_row=x0)
        if any(v.inconclusive for v in per_row.values()):
            return verdicts.inconclusive("undecided rows remain")
        return verdicts.fails(rows=sorted(per_row))
    if any(v.fails for v in per_row.values()):
        x0 = next(k for k, v in per_row.items() if v.fails)
        return verdicts.fails(counterexample_row=x0)
    if any(v.inconclusive for v in per_row.values()):
        return verdicts.inconclusive("undecided rows remain")
    return verdicts.holds(rows=sorted(per_row))


def small_terms_diagnostic(seq: LogWeightSequence) -> Verdict:
    """p / (M^I_p)^{1/p} must tend to zero for a non-quasianalytic class."""
    if not class_nq_verdict(seq).holds:
        raise ClassMembershipFailed("diagnostic requires a non-quasianalytic class")
    mi = increasing_root_minorant(seq)
    ps = np.arange(1, mi.P + 1)
    vals = np.log(ps) - mi.L[1:] / ps
    quarter = vals[3 * len(vals) // 4 :]
    prefix_trend = bool(np.all(np.diff(quarter) <= 1e-9)) and quarter[-1] < quarter[0] + 1e-9
    if mi.tail is not None:
        kind, u, _ = mi.tail.asymptote()
        if kind == "poly" or u > 1.0:
            return verdicts.holds(limit=0.0, prefix_decreasing=prefix_trend)
        return verdicts.fails(root_exponent=u)
    if prefix_trend:
        return verdicts.inconclusive("prefix decreasing but no tail", last=float(quarter[-1]))
    return verdicts.inconclusive("no trend on prefix")


# -- the minorant recursion ---------------------------------------------

@dataclass(frozen=True)
class MinorantTrace:
    a: tuple[int, ...]
    b: tuple[int, ...]
    N: LogWeightSequence
    tail_sum_bound: float
    q_completed: int
    certificates: dict

    def to_json(self) -> dict:
        return {
            "a": list(self.a),
            "b": list(self.b),
            "tail_sum_bound": self.tail_sum_bound,
            "q_completed": self.q_completed,
            "N": self.N.to_json(),
            "certificates": self.certificates,
        }


def _first_index_where(pred, start: int, cap: int = 10 ** 18) -> int | None:
    """Minimal integer >= start with pred true; pred must be monotone
    (false ... false true ... true).  Exponential bracket plus bisection."""
    lo, hi = start, start
    step = 1
    while not pred(hi):
        lo = hi + 1
        step *= 4
        hi = hi + step
        if hi > cap:
            return None
    while lo < hi:
        mid = (lo + hi) // 2
        if pred(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def construct_minorant(M: WeightMatrix) -> MinorantTrace:
    """Run the switch-index recursion on rows ordered decreasingly in q.

    The matrix labels are read as 1/q: row(1/1) is the largest row, and
    the recursion for step q consumes rows 1/q and 1/(q+1).  The stored
    prefix length of the output equals that of the input rows; switch
    indices beyond it are located on the symbolic tails.
    """
    Q = len(M.labels)
    if Q < 2:
        raise ValueError("need at least two rows")
    rows = {}
    for q in range(1, Q + 1):
        lbl = 1.0 / q
        match = [r for l, r in zip(M.labels, M.rows) if abs(l - lbl) < 1e-12]
        if not match:
            raise ValueError(f"matrix lacks the label 1/{q}")
        row = match[0]
        if not check_log_convex(row).holds:
            row = lc_minorant(row)
        if row.tail is None or row.tail.root_sum_tail_upper(10.0) is None:
            raise TailNotCertified(f"row 1/{q} lacks a certified tail bound")
        if not class_nq_verdict(row).holds:
            raise ClassMembershipFailed(f"row 1/{q} is not non-quasianalytic")
        rows[q] = row

    def root(q: int, p: float) -> float:
        return rows[q].root(p)

    a: list[int] = []
    b: list[int] = []
    certs: dict = {}
    b_prev = 0
    for q in range(1, Q):
        bound = 2.0 ** (-q) / (q + 1)
        tail_next = rows[q + 1].tail
        a_q = _first_index_where(
            lambda X: tail_next.root_sum_tail_upper(float(X)) <= bound,
            b_prev + 1,
        )
        if a_q is None:
            raise TruncationExhausted(q, f"no certified a_{q} found")
        plateau = -math.log(q) + root(q, a_q)
        b_q = _first_index_where(
            lambda X: plateau < -math.log(q + 1) + root(q + 1, X),
            a_q + 1,
        )
        if b_q is None:
            raise TruncationExhausted(q, f"no b_{q} found")
        a.append(a_q)
        b.append(b_q)
        certs[f"q={q}"] = {
            "tail_bound_at_a": tail_next.root_sum_tail_upper(float(a_q)),
            "required": bound,
            "plateau_root_log": plateau,
        }
        b_prev = b_q

    def minorant_root(p: float) -> float:
        """Root of the constructed sequence at any index >= 1."""
        for q in range(1, Q):
            lo = b[q - 2] if q >= 2 else 0
            if lo <= p <= a[q - 1]:
                return -math.log(q) + root(q, p)
            if a[q - 1] < p < b[q - 1]:
                return -math.log(q) + root(q, a[q - 1])
        return -math.log(Q) + root(Q, p)     # p >= b_{Q-1}

    P = min(r.P for r in rows.values())
    L = np.zeros(P + 1)
    for p in range(1, P + 1):
        L[p] = p * minorant_root(p)
    N = LogWeightSequence(tuple(L), None, 0, "constructed-minorant")

    total = sum(
        (q + 1) * certs[f"q={q}"]["tail_bound_at_a"] for q in range(1, Q)
    ) + 2.0 ** (-(Q - 1))
    return MinorantTrace(tuple(a), tuple(b), N, float(total), Q - 1, certs)


def minorant_checkpoints(trace: MinorantTrace, M: WeightMatrix, n: int = 400):
    """Roots of the constructed minorant at the stored prefix plus
    log-spaced indices through every recursion regime; used to replay the
    monotonicity and domination invariants far beyond the prefix."""
    Q = trace.q_completed + 1
    rows = {q: M.row(1.0 / q) for q in range(1, Q + 1)}
    a, b = trace.a, trace.b

    def minorant_root(p: float) -> float:
        for q in range(1, Q):
            lo = b[q - 2] if q >= 2 else 0
            if lo <= p <= a[q - 1]:
                return -math.log(q) + rows[q].root(p)
            if a[q - 1] < p < b[q - 1]:
                return -math.log(q) + rows[q].root(a[q - 1])
        return -math.log(Q) + rows[Q].root(p)

    hi = 4.0 * b[-1]
    ps = sorted(
        set(range(1, trace.N.P + 1))
        | set(int(p) for p in np.geomspace(2, hi, n))
        | set(a) | set(b)
        | set(x + 1 for x in a) | set(x + 1 for x in b)
    )
    return np.array(ps, dtype=float), np.array([minorant_root(p) for p in ps])


def sandwich_construct(
    N_matrix: WeightMatrix, M_matrix: WeightMatrix
) -> LogWeightSequence:
    """A log-convex non-quasianalytic sequence strictly between two
    matrices: above every row of the first, below every row of the second.

    The candidate interpolant is verified before being returned; an
    unverifiable candidate is an explicit error, never a silent result.
    """
    if not relation_matrix(N_matrix, M_matrix, "triangle").holds:
        raise ClassMembershipFailed("lower matrix is not strictly below upper")
    for lbl, row in zip(M_matrix.labels, M_matrix.rows):
        if not class_nq_verdict(row).holds:
            raise ClassMembershipFailed(f"upper row {lbl:g} not non-quasianalytic")

    n_rows = [lc_minorant(r) for r in N_matrix.rows]
    m_rows = list(M_matrix.rows)
    P = min(min(r.P for r in n_rows), min(r.P for r in m_rows))
    upper_of_lower = np.max([r.L[: P + 1] for r in n_rows], axis=0)
    lower_of_upper = np.min([r.L[: P + 1] for r in m_rows], axis=0)
    q_vals = 0.5 * (upper_of_lower + lower_of_upper)
    q_tail = geometric_mean(n_rows[-1].tail, m_rows[0].tail)
    if q_tail is None:
        interpolant = LogWeightSequence(tuple(q_vals), None, 0, "interpolant")
    else:
        vals = q_tail.log_values(np.arange(P + 1))
        interpolant = LogWeightSequence(tuple(vals), q_tail, 0, "interpolant")

    candidates = []
    try:
        trace = construct_minorant(M_matrix)
        p_hull = lc_minorant(trace.N)
        PP = min(P, p_hull.P)
        merged = np.maximum(p_hull.L[: PP + 1], interpolant.L[: PP + 1])
        candidates.append(
            lc_minorant(LogWeightSequence(tuple(merged), None, 0, "merged"))
        )
    except (TruncationExhausted, TailNotCertified, ValueError):
        pass
    candidates.append(lc_minorant(interpolant))

    failures = []
    for cand in candidates:
        checks = {
            "log_convex": check_log_convex(cand),
            "nq": None,
        }
        try:
            checks["nq"] = class_nq_verdict(cand)
        except RoutesDisagree:
            raise
        ok = checks["log_convex"].holds and checks["nq"].holds
        for r in n_rows:
            ok = ok and relation_triangle(r, cand).holds
        for r in m_rows:
            ok = ok and relation_triangle(cand, r).holds
        if ok:
            return cand.with_label("sandwich")
        failures.append(cand.label)
    raise InterpolantUnverified(f"all candidates failed verification: {failures}")
