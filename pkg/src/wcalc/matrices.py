"""Weight matrices: one-parameter families of weight sequences, their
quantified growth conditions, mutual relations, the subsequence-root
extension chain, and the consistency dossiers tying all of it together.

Quantifiers over the index set are resolved by finite search over the
represented labels.  Parametric families additionally carry an extender
(label -> row) so existential searches may draw on labels beyond the
represented extremes; every witness records whether it was extended.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import verdicts
from .errors import ClassMembershipFailed, DomainExceeded
from .sequences import (
    LogWeightSequence,
    check_beta3,
    check_in_LC,
    check_log_convex,
    check_moderate_growth,
    lc_minorant,
    relation_approx,
    relation_preceq,
    relation_triangle,
)
from .tails import FactorialPower, root_gap_limit
from .verdicts import Verdict
from .weightfuncs import (
    WeightFunction,
    associated_function,
    check_omega_conditions,
    relation_omega,
    sequence_from_weight,
)

CONDITION_NAMES = (
    "dc_roumieu", "dc_beurling",
    "mg_roumieu", "mg_beurling",
    "L_roumieu", "L_beurling",
    "strict_roumieu", "strict_beurling",
    "BR_roumieu", "BR_beurling",
    "Cw_roumieu", "H", "Cw_beurling",
)


@dataclass(frozen=True)
class WeightMatrix:
    labels: tuple[float, ...]
    rows: tuple[LogWeightSequence, ...]
    extender: object = None          # callable label -> LogWeightSequence
    label: str = ""

    def __post_init__(self):
        if len(self.labels) != len(self.rows):
            raise ValueError("labels and rows must align")
        if any(b <= a for a, b in zip(self.labels, self.labels[1:])):
            raise ValueError("labels must be strictly increasing")

    def row(self, x: float) -> LogWeightSequence:
        for lbl, r in zip(self.labels, self.rows):
            if lbl == x:
                return r
        if self.extender is not None:
            return self.extender(x)
        raise KeyError(f"label {x} not represented and no extender")

    def check_M(self) -> Verdict:
        """Normalized rows, each non-decreasing, pointwise ordered in x."""
        parts = {}
        for lbl, r in zip(self.labels, self.rows):
            L = r.L
            ok = r.is_normalized() and bool(np.all(np.diff(L) >= -1e-12))
            parts[f"row:{lbl:g}"] = verdicts.holds() if ok else verdicts.fails()
        for (l1, r1), (l2, r2) in zip(
            zip(self.labels, self.rows), list(zip(self.labels, self.rows))[1:]
        ):
            P = min(r1.P, r2.P)
            ordered = bool(np.all(r2.L[: P + 1] - r1.L[: P + 1] >= -1e-12))
            parts[f"order:{l1:g}<={l2:g}"] = (
                verdicts.holds() if ordered else verdicts.fails()
            )
        return verdicts.conjunction(parts)

    def check_Msc(self) -> Verdict:
        parts = {"M": self.check_M()}
        for lbl, r in zip(self.labels, self.rows):
            parts[f"LC:{lbl:g}"] = check_in_LC(r)
        return verdicts.conjunction(parts)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "labels": list(self.labels),
            "rows": {f"{l:g}": r.to_json() for l, r in zip(self.labels, self.rows)},
        }


def build_gevrey_matrix(s_values, pmax: int = 200) -> WeightMatrix:
    """Rows p -> p!**(s+1) for the given strictly increasing s values."""
    s_values = tuple(float(s) for s in s_values)
    if any(s <= 0 for s in s_values):
        raise ValueError("Gevrey indices must be positive")

    def extend(s: float) -> LogWeightSequence:
        return LogWeightSequence.from_tail(
            FactorialPower(s + 1.0, 1.0), pmax, f"gevrey-row:{s:g}"
        )

    rows = tuple(extend(s) for s in s_values)
    return WeightMatrix(s_values, rows, extend, "gevrey-matrix")


def build_omega_matrix(w: WeightFunction, l_values, pmax: int = 200) -> WeightMatrix:
    """Rows j -> exp((1/l) phi*(l*j)) of a weight function."""
    conds = check_omega_conditions(w)
    for name in ("omega0", "omega3", "omega4"):
        if not conds[name].holds:
            raise ClassMembershipFailed(f"{w.label}: {name} not certified")
    l_values = tuple(float(l) for l in l_values)

    def extend(l: float) -> LogWeightSequence:
        return sequence_from_weight(w, l, pmax)

    rows = tuple(extend(l) for l in l_values)
    return WeightMatrix(l_values, rows, extend, f"omega-matrix({w.label})")


# -- pairwise inequality engines ---------------------------------------

def _keys(x: LogWeightSequence, y: LogWeightSequence):
    if x.tail is None or y.tail is None:
        return None
    return x.tail.asymptote(), y.tail.asymptote()


def _dc_pair(x: LogWeightSequence, y: LogWeightSequence) -> Verdict:
    """Is sup_j (L^x_{j+1} - L^y_j)/(j+1) finite?"""
    P = min(x.P, y.P) - 1
    js = np.arange(0, P + 1)
    prefix = float(np.max((x.L[1 : P + 2] - y.L[: P + 1]) / (js + 1)))
    g = root_gap_limit(x.tail, y.tail)
    if g is None:
        return verdicts.inconclusive("no tail", prefix_sup=prefix)
    if g == -math.inf:
        return verdicts.holds(C=math.exp(max(prefix, 0.0)))
    if g == math.inf:
        return verdicts.fails(gap_limit="+inf")
    kx, ky = _keys(x, y)
    if kx[0] == "poly" and ky[0] == "poly" and kx[1] > 1.0:
        # shift by one index adds kappa*(gamma+1)*j**(gamma-1), unbounded
        return verdicts.fails(unbounded_shift_defect=True)
    return verdicts.holds(C=math.exp(max(prefix, g) + 0.1))


def _mg_pair(x: LogWeightSequence, y: LogWeightSequence) -> Verdict:
    """Is sup_{j,k} (L^x_{j+k} - L^y_j - L^y_k)/(j+k) finite?"""
    P = min(x.P, y.P)
    Lx, Ly = x.L[: P + 1], y.L[: P + 1]
    best = -math.inf
    for m in range(1, P + 1):
        conv = Ly[: m + 1] + Ly[m::-1]
        best = max(best, float((Lx[m] - conv.min()) / m))
    g = root_gap_limit(x.tail, y.tail)
    if g is None:
        return verdicts.inconclusive("no tail", prefix_C=math.exp(best))
    kx, ky = _keys(x, y)
    if kx[0] == "log" and ky[0] == "log":
        ok = kx[1] <= ky[1]
    elif kx[0] == "poly" and ky[0] == "poly":
        if kx[1] != ky[1]:
            ok = kx[1] < ky[1]
        else:
            # diagonal j = k is the extremal direction for convex exponents
            ok = ky[2] >= 2.0 ** kx[1] * kx[2] * (1 - 1e-12)
    else:
        ok = kx[0] == "log"
    if ok:
        return verdicts.holds(C=math.exp(max(best, 0.0) + 0.1))
    return verdicts.fails(prefix_C=math.exp(best), divergent_diagonal=True)


# -- quantifier helpers -------------------------------------------------

def _exists(candidates, pred) -> Verdict:
    """candidates: iterable of (label, row, extended_flag)."""
    open_reason = None
    for lbl, row, ext in candidates:
        v = pred(row)
        if v.holds:
            wit = dict(v.witness)
            wit["y"] = lbl
            if ext:
                wit["extended_label"] = True
            return verdicts.holds(**wit)
        if v.inconclusive:
            open_reason = v.reason
    if open_reason is not None:
        return verdicts.inconclusive(open_reason)
    return verdicts.fails(searched=[lbl for lbl, _, _ in candidates])


def _forall(items, pred) -> Verdict:
    parts = {}
    for lbl, row in items:
        parts[f"x={lbl:g}"] = pred(lbl, row)
    return verdicts.conjunction(parts)


def _candidates(M: WeightMatrix, direction: str):
    """Search pool for an existential label: all rows, then extended ones.

    direction "up" appends labels beyond the maximum, "down" below the
    minimum; both only when the matrix carries an extender.
    """
    pool = [(lbl, row, False) for lbl, row in zip(M.labels, M.rows)]
    if M.extender is not None:
        if direction == "up":
            top = M.labels[-1]
            extra = [top + 1, 2 * top + 1, 4 * top + 2]
        else:
            bot = M.labels[0]
            extra = [bot / 2, bot / 4, bot / 8]
        pool += [(lbl, M.extender(lbl), True) for lbl in extra]
    return pool


# -- matrix conditions --------------------------------------------------

def check_matrix_condition(M: WeightMatrix, condition: str) -> Verdict:
    if condition not in CONDITION_NAMES:
        raise ValueError(f"unknown condition: {condition}")
    name = condition

    if name == "dc_roumieu":
        return _forall(
            zip(M.labels, M.rows),
            lambda lbl, row: _exists(_candidates(M, "up"), lambda y: _dc_pair(row, y)),
        )
    if name == "dc_beurling":
        return _forall(
            zip(M.labels, M.rows),
            lambda lbl, row: _exists(_candidates(M, "down"), lambda y: _dc_pair(y, row)),
        )
    if name == "mg_roumieu":
        return _forall(
            zip(M.labels, M.rows),
            lambda lbl, row: _exists(_candidates(M, "up"), lambda y: _mg_pair(row, y)),
        )
    if name == "mg_beurling":
        # x_1 = x_2 = the larger of any pair suffices since rows are ordered
        return _forall(
            zip(M.labels, M.rows),
            lambda lbl, row: _exists(_candidates(M, "down"), lambda y: _mg_pair(y, row)),
        )
    if name in ("L_roumieu", "L_beurling"):
        up = name == "L_roumieu"

        def absorbs_all_C(row):
            def pred(y):
                g = root_gap_limit(*((row.tail, y.tail) if up else (y.tail, row.tail)))
                if g is None:
                    return verdicts.inconclusive("no tail")
                if g == -math.inf:
                    return verdicts.holds(absorbs="every C")
                return verdicts.fails(gap_limit=g)

            return _exists(_candidates(M, "up" if up else "down"), pred)

        return _forall(zip(M.labels, M.rows), lambda lbl, row: absorbs_all_C(row))
    if name in ("strict_roumieu", "strict_beurling"):
        up = name == "strict_roumieu"

        def strict_pred(row):
            def pred(y):
                g = root_gap_limit(*((y.tail, row.tail) if up else (row.tail, y.tail)))
                if g is None:
                    return verdicts.inconclusive("no tail")
                if g == math.inf:
                    return verdicts.holds(sup="+inf")
                return verdicts.fails(gap_limit=g)

            return _exists(_candidates(M, "up" if up else "down"), pred)

        return _forall(zip(M.labels, M.rows), lambda lbl, row: strict_pred(row))
    if name in ("BR_roumieu", "BR_beurling"):
        up = name == "BR_roumieu"

        def br_pred(row):
            def pred(y):
                return (
                    relation_triangle(row, y) if up else relation_triangle(y, row)
                )

            return _exists(_candidates(M, "up" if up else "down"), pred)

        return _forall(zip(M.labels, M.rows), lambda lbl, row: br_pred(row))

    # analytic-containment conditions via the root behaviour of m = M/p!
    def m_root_gap(row):
        return root_gap_limit(row.tail, FactorialPower(1.0, 1.0))

    if name == "Cw_roumieu":
        for lbl, row in zip(M.labels, M.rows):
            g = m_root_gap(row)
            if g is not None and g > -math.inf:
                return verdicts.holds(x=lbl, m_root_liminf_log=g)
        if any(row.tail is None for row in M.rows):
            return verdicts.inconclusive("rows without tails")
        return verdicts.fails()
    if name in ("H", "Cw_beurling"):
        parts = {}
        for lbl, row in zip(M.labels, M.rows):
            g = m_root_gap(row)
            if g is None:
                parts[f"x={lbl:g}"] = verdicts.inconclusive("no tail")
            elif name == "H":
                parts[f"x={lbl:g}"] = (
                    verdicts.holds(gap=g) if g > -math.inf else verdicts.fails()
                )
            else:
                parts[f"x={lbl:g}"] = (
                    verdicts.holds() if g == math.inf else verdicts.fails(gap=g)
                )
        return verdicts.conjunction(parts)
    raise AssertionError(name)


def relation_matrix(M: WeightMatrix, N: WeightMatrix, kind: str) -> Verdict:
    if kind == "roumieu_preceq":
        return _forall(
            zip(M.labels, M.rows),
            lambda lbl, row: _exists(
                [(l, r, False) for l, r in zip(N.labels, N.rows)],
                lambda y: relation_preceq(row, y),
            ),
        )
    if kind == "beurling_preceq":
        return _forall(
            zip(N.labels, N.rows),
            lambda lbl, rowN: _exists(
                [(l, r, False) for l, r in zip(M.labels, M.rows)],
                lambda x: relation_preceq(x, rowN),
            ),
        )
    if kind == "roumieu_approx":
        return verdicts.conjunction(
            {
                "forward": relation_matrix(M, N, "roumieu_preceq"),
                "backward": relation_matrix(N, M, "roumieu_preceq"),
            }
        )
    if kind == "beurling_approx":
        return verdicts.conjunction(
            {
                "forward": relation_matrix(M, N, "beurling_preceq"),
                "backward": relation_matrix(N, M, "beurling_preceq"),
            }
        )
    if kind == "triangle":
        parts = {}
        for lx, rx in zip(M.labels, M.rows):
            for ly, ry in zip(N.labels, N.rows):
                parts[f"{lx:g}<|{ly:g}"] = relation_triangle(rx, ry)
        return verdicts.conjunction(parts)
    raise ValueError(f"unknown relation kind: {kind}")


# -- multi-index construction -------------------------------------------

@dataclass(frozen=True)
class MultiIndexChain:
    base: WeightMatrix
    steps: tuple[float, ...] = ()
    current: WeightMatrix = None

    def __post_init__(self):
        if self.current is None:
            object.__setattr__(self, "current", self.base)


def multi_index_step(chain: MultiIndexChain, l: float) -> MultiIndexChain:
    """Apply the row transform M -> (j -> exp((1/l) phi*_{omega_M}(l j)))."""
    cur = chain.current
    new_rows = []
    for lbl, row in zip(cur.labels, cur.rows):
        w = associated_function(row)
        pmax = min(row.P, int(math.floor(row.P / l)))
        if pmax < 2:
            raise DomainExceeded(f"step l={l} leaves fewer than 3 indices")
        new_rows.append(
            sequence_from_weight(w, l, pmax, f"{row.label};{l:g}")
        )
    new_mat = WeightMatrix(
        cur.labels, tuple(new_rows), None, f"{cur.label};step{l:g}"
    )
    return MultiIndexChain(chain.base, chain.steps + (float(l),), new_mat)


def check_omega_stability(chain: MultiIndexChain) -> Verdict:
    """omega of every extended row stays equivalent to omega of its base row."""
    parts = {}
    for lbl, base_row, cur_row in zip(
        chain.base.labels, chain.base.rows, chain.current.rows
    ):
        parts[f"x={lbl:g}"] = relation_omega(
            associated_function(base_row), associated_function(cur_row), "sim"
        )
    return verdicts.conjunction(parts)


def integer_step_identity_error(chain: MultiIndexChain) -> float:
    """max |L^{x;l}_j - L^x_{jl}/l| over rows and jl within range.

    Only meaningful when all steps are integers and base rows log-convex.
    """
    err = 0.0
    for base_row, cur_row in zip(chain.base.rows, chain.current.rows):
        l = 1.0
        for s in chain.steps:
            l *= s
        hull = lc_minorant(base_row)
        for j in range(cur_row.P + 1):
            jl = j * l
            if jl > hull.P:
                break
            want = hull.L[int(round(jl))] / l if float(jl).is_integer() else None
            if want is None:
                continue
            err = max(err, abs(cur_row.L[j] - want))
    return err


# -- pseudo moderate growth ---------------------------------------------

def min_convolution(seq: LogWeightSequence) -> LogWeightSequence:
    """N_p = min_{0<=q<=p} M_q * M_{p-q} in log domain."""
    L = seq.L
    out = np.array(
        [float(np.min(L[: p + 1] + L[p::-1])) for p in range(seq.P + 1)]
    )
    return LogWeightSequence(tuple(out), None, 0, f"minconv({seq.label})")


def min_convolution_omega_gap(seq: LogWeightSequence, n: int = 256) -> float:
    """max |omega_N(t) - 2 omega_M(t)| on the safely resolved band."""
    N = min_convolution(seq)
    wM = associated_function(lc_minorant(seq))
    wN = associated_function(lc_minorant(N))
    half = associated_function(
        lc_minorant(
            LogWeightSequence(tuple(seq.L[: seq.P // 2 + 1]), None, 0, "")
        )
    )
    s_hi = half.valid_to
    s = np.linspace(0.0, s_hi, n)
    return float(np.max(np.abs(wN.phi(s) - 2.0 * wM.phi(s))))


def _pseudo_mg_grid_ok(
    w_small: WeightFunction, w_big: WeightFunction, H: float, n: int = 200
) -> bool:
    """2*omega_small(t) <= omega_big(H t) + H on the shared resolved band."""
    s_hi = min(w_small.valid_to, w_big.valid_to) - math.log(H)
    if s_hi <= 1.0:
        return False
    s = np.linspace(0.0, s_hi, n)
    lhs = 2.0 * w_small.phi(s)
    rhs = w_big.phi(s + math.log(H)) + H
    return bool(np.all(lhs <= rhs + 1e-9))


def check_pseudo_mg(M: WeightMatrix, variant: str = "roumieu") -> Verdict:
    """Associated-function form of the mixed moderate-growth condition,
    cross-validated against the sequence-level verdict."""
    if variant not in ("roumieu", "beurling"):
        raise ValueError(variant)
    ws = {lbl: associated_function(row) for lbl, row in zip(M.labels, M.rows)}

    def per_x(lbl, row):
        pool = _candidates(M, "up" if variant == "roumieu" else "down")

        def pred(y_row):
            wy = associated_function(y_row)
            wx = ws[lbl]
            small, big = (wy, wx) if variant == "roumieu" else (wx, wy)
            for k in range(0, 16):
                H = 2.0 ** k
                if _pseudo_mg_grid_ok(small, big, H):
                    return verdicts.holds(H=H)
            return verdicts.inconclusive("no H on grid within resolved band")

        return _exists(pool, pred)

    omega_side = _forall(zip(M.labels, M.rows), per_x)
    seq_side = check_matrix_condition(M, f"mg_{variant}")
    agree = (
        omega_side.inconclusive
        or seq_side.inconclusive
        or omega_side.status is seq_side.status
    )
    if not agree:
        return verdicts.fails(
            omega_side=omega_side.status.value, sequence_side=seq_side.status.value
        )
    if omega_side.inconclusive and seq_side.inconclusive:
        return verdicts.inconclusive("both routes undecided")
    decided = seq_side if not seq_side.inconclusive else omega_side
    return verdicts.Verdict(
        decided.status,
        {
            "omega_side": omega_side.status.value,
            "sequence_side": seq_side.status.value,
        },
        "",
    )


# -- stability of the construction --------------------------------------

def check_stability_theorem(
    M: WeightMatrix, l_values=(2.0, 3.0, 0.5, 0.25)
) -> Verdict:
    """The extension chain produces an equivalent matrix whenever the
    mixed moderate-growth conditions hold, and a second extension is
    always equivalent to the first."""
    if not M.check_Msc().holds:
        raise ClassMembershipFailed("matrix is not standard log-convex")
    parts = {
        "mg_roumieu": check_matrix_condition(M, "mg_roumieu"),
        "mg_beurling": check_matrix_condition(M, "mg_beurling"),
    }
    base_chain = MultiIndexChain(M)
    for l in l_values:
        ext = multi_index_step(base_chain, l)
        parts[f"approx_roumieu:l={l:g}"] = relation_matrix(
            M, ext.current, "roumieu_approx"
        )
        parts[f"approx_beurling:l={l:g}"] = relation_matrix(
            M, ext.current, "beurling_approx"
        )
    # idempotence after one step: extending again changes nothing up to approx
    once = multi_index_step(base_chain, 2.0)
    twice = multi_index_step(once, 2.0)
    parts["second_extension_roumieu"] = relation_matrix(
        once.current, twice.current, "roumieu_approx"
    )
    parts["second_extension_beurling"] = relation_matrix(
        once.current, twice.current, "beurling_approx"
    )
    # iterated inequality for the Beurling direction: doubling twice
    wx = associated_function(M.rows[0])
    wy = associated_function(M.rows[-1])
    ok2 = False
    for k in range(0, 16):
        H = 2.0 ** k
        s_hi = min(wx.valid_to, wy.valid_to) - 2 * math.log(H)
        if s_hi <= 1.0:
            break
        s = np.linspace(0.0, s_hi, 128)
        if bool(np.all(4.0 * wx.phi(s) <= wy.phi(s + 2 * math.log(H)) + 3 * H)):
            ok2 = True
            break
    parts["iterated_doubling"] = (
        verdicts.holds(k=2) if ok2 else verdicts.inconclusive("no H on grid")
    )
    return verdicts.conjunction(parts)


def check_L_consequences(M: WeightMatrix) -> Verdict:
    """If every power C^k can be absorbed between rows, then the doubled
    argument of the associated functions and the mixed-index domination
    are controlled as well."""
    L_verdict = check_matrix_condition(M, "L_roumieu")
    if L_verdict.fails:
        return verdicts.holds(vacuous=True, L="fails")
    if L_verdict.inconclusive:
        return verdicts.inconclusive("antecedent undecided")
    parts = {"L": L_verdict}

    # (a) omega_{M^y}(2t) = O(omega_{M^x}(t)) with searched y
    def doubling(lbl, row):
        wx = associated_function(row)

        def pred(y_row):
            wy = associated_function(y_row)
            s_hi = min(wx.valid_to, wy.valid_to) - math.log(2)
            if s_hi <= 1.0:
                return verdicts.inconclusive("no resolved band")
            s = np.linspace(1.0, s_hi, 128)
            ratio = wy.phi(s + math.log(2)) / np.maximum(wx.phi(s), 1e-12)
            r = float(np.max(ratio[wx.phi(s) > 1.0])) if np.any(wx.phi(s) > 1.0) else 1.0
            cls_ok = relation_omega(wx, wy, "preceq").holds
            if cls_ok:
                return verdicts.holds(grid_ratio=r)
            return verdicts.fails(grid_ratio=r)

        return _exists(_candidates(M, "up"), pred)

    parts["omega_doubling"] = _forall(zip(M.labels, M.rows), doubling)

    # (b) mixed-index domination with moderate h and inner steps a, b
    def mixed(lbl, row):
        base = MultiIndexChain(
            WeightMatrix((lbl,), (row,), None, "single")
        )
        rows_a = {a: multi_index_step(base, a).current.rows[0] for a in (1.0, 2.0)}

        def dominated(xa, h):
            def pred(y_row):
                wy = associated_function(y_row)
                for b in (1.0, 2.0):
                    try:
                        yb = sequence_from_weight(wy, b, min(y_row.P, int(y_row.P // b)))
                    except DomainExceeded:
                        continue
                    g = root_gap_limit(xa.tail, yb.tail)
                    if g is not None and g < -math.log(h):
                        P = min(xa.P, yb.P)
                        js = np.arange(1, P + 1)
                        D = float(
                            np.max(js * math.log(h) + xa.L[1 : P + 1] - yb.L[1 : P + 1])
                        )
                        return verdicts.holds(b=b, D=math.exp(max(D, 0.0)))
                return verdicts.fails()

            return _exists(_candidates(M, "up"), pred)

        sub = {}
        for a in (1.0, 2.0):
            for h in (2.0, 4.0):
                sub[f"a={a:g},h={h:g}"] = dominated(rows_a[a], h)
        return verdicts.conjunction(sub)

    parts["mixed_index"] = _forall(zip(M.labels, M.rows), mixed)
    return verdicts.conjunction(parts)


def check_BR_triangle(M: WeightMatrix) -> Verdict:
    """Beyond-all-rows relation transfers to the associated functions and
    back under the stated hypotheses."""
    br = check_matrix_condition(M, "BR_roumieu")
    per_row_mg = _forall(
        zip(M.labels, M.rows), lambda lbl, row: check_moderate_growth(row)
    )
    ws = {lbl: associated_function(row) for lbl, row in zip(M.labels, M.rows)}

    def omega_tri(lbl, row):
        def pred(y_row):
            return relation_omega(ws[lbl], associated_function(y_row), "triangle")

        return _exists(_candidates(M, "up"), pred)

    omega_side = _forall(zip(M.labels, M.rows), omega_tri)
    per_row_o1 = _forall(
        zip(M.labels, M.rows),
        lambda lbl, row: check_omega_conditions(ws[lbl])["omega1"],
    )

    def _impl(hyp, cons):
        if hyp.holds:
            return cons
        if hyp.fails:
            return verdicts.holds(vacuous=True)
        return verdicts.inconclusive("hypothesis undecided")

    forward_hyp = verdicts.conjunction({"BR": br, "mg": per_row_mg})
    return verdicts.conjunction(
        {
            "forward": _impl(forward_hyp, omega_side),
            "converse": _impl(
                verdicts.conjunction({"omega1": per_row_o1, "triangle": omega_side}),
                br,
            ),
        }
    )


# -- the equivalence dossier --------------------------------------------

def comparison_report(obj) -> dict:
    """Full consistency dossier for a sequence or a weight function."""
    report: dict = {"verdicts": {}}
    V = report["verdicts"]
    if isinstance(obj, LogWeightSequence):
        report["input"] = {"kind": "sequence", **obj.to_json()}
        if not check_in_LC(obj).holds:
            raise ClassMembershipFailed("sequence not in the admissible class")
        V["beta3"] = check_beta3(obj)
        V["mg"] = check_moderate_growth(obj)
        w = associated_function(obj)
        l_set = (1.0, 2.0, 0.5)
        rows = {}
        for l in l_set:
            pmax = obj.P if l >= 1 else obj.P   # slopes l*j <= P constrain anyway
            pmax = int(min(obj.P, obj.P // max(l, 1.0)))
            rows[l] = sequence_from_weight(w, l, max(pmax, 2))
        V["reconstruction"] = (
            verdicts.holds(
                max_log_dev=float(
                    np.max(np.abs(rows[1.0].L - obj.L[: rows[1.0].P + 1]))
                )
            )
            if float(np.max(np.abs(rows[1.0].L - obj.L[: rows[1.0].P + 1]))) <= 1e-9
            else verdicts.fails()
        )
        for l in l_set:
            V[f"approx:l={l:g}"] = relation_approx(obj, rows[l])
            V[f"mg:l={l:g}"] = check_moderate_growth(rows[l])
            V[f"omega_sim:l={l:g}"] = relation_omega(
                w, associated_function(rows[l]), "sim"
            )
            V[f"beta3:l={l:g}"] = check_beta3(rows[l])
    elif isinstance(obj, WeightFunction):
        report["input"] = {"kind": "weight", **obj.to_json()}
        conds = check_omega_conditions(obj)
        for name in ("omega0", "omega3", "omega4"):
            if not conds[name].holds:
                raise ClassMembershipFailed(f"{name} not certified")
        V["omega6"] = conds["omega6"]
        mat = build_omega_matrix(obj, (1.0, 2.0, 4.0), pmax=120)
        pair_parts = {}
        for i, (l1, r1) in enumerate(zip(mat.labels, mat.rows)):
            for l2, r2 in list(zip(mat.labels, mat.rows))[i + 1 :]:
                pair_parts[f"{l1:g}~{l2:g}"] = relation_approx(r1, r2)
        all_pairs = verdicts.conjunction(pair_parts)
        row_mg = _forall(
            zip(mat.labels, mat.rows), lambda lbl, row: check_moderate_growth(row)
        )
        V["rows_pairwise_approx"] = all_pairs
        V["rows_mg"] = row_mg
        if conds["omega6"].holds:
            consistent = all_pairs.holds and row_mg.holds
        elif conds["omega6"].fails:
            consistent = not all_pairs.holds
        else:
            consistent = True
        V["equivalence_consistent"] = (
            verdicts.holds() if consistent else verdicts.fails()
        )
    else:
        raise TypeError("expected a sequence or a weight function")
    report["status"] = verdicts.conjunction(
        {
            k: v
            for k, v in V.items()
            if k not in ("omega6", "rows_pairwise_approx", "rows_mg")
        }
    ).status.value
    return report
