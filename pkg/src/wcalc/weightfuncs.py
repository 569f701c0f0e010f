"""Weight functions in log coordinates.

A weight omega is carried as phi(s) = omega(e^s).  For weights built from a
sequence, phi is the exact convex piecewise-linear upper envelope
max_p (p*s - L_p); for the two symbolic families (power-log and root-power)
phi and its Young conjugate are closed forms.  Condition checks are decided
analytically from a coarse growth class

    ("power", alpha):    omega(t) ~ const * t**alpha
    ("logpower", sigma): omega(t) ~ const * (log t)**sigma

and fall back to Inconclusive grid evidence when no class is known.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import verdicts
from .convex import ConvexPL, upper_envelope_of_lines
from .errors import DomainExceeded, NotNormalized, ClassMembershipFailed
from .sequences import (
    LogWeightSequence,
    check_in_LC,
    check_moderate_growth,
    lc_minorant,
    relation_preceq,
)
from .tails import FactorialPower, PowerIndex, RootPowerDualTail, SteppedTail, root_gap_limit
from .verdicts import Verdict

OMEGA_CONDITIONS = (
    "omega0", "omega1", "omega2", "omega3", "omega4",
    "omega5", "omega6", "omega7", "omega_nq",
)


@dataclass(frozen=True)
class WeightFunction:
    source: tuple
    phi_pl: ConvexPL | None
    valid_to: float
    label: str = ""

    # -- evaluation -----------------------------------------------------

    def phi(self, s):
        """phi(s) = omega(e^s); vectorized."""
        s = np.asarray(s, dtype=float)
        kind = self.source[0]
        if kind == "power_log":
            sigma = self.source[1]
            out = np.where(s > 0, np.maximum(s, 0.0) ** sigma, 0.0)
        elif kind == "root_power":
            a, c = self.source[1], self.source[2]
            out = np.where(s > 0, c * (np.exp(a * np.maximum(s, 0.0)) - 1.0), 0.0)
        else:
            out = np.asarray(self.phi_pl(s), dtype=float)
            out = np.where(s <= 0, 0.0, out)
        return out if out.ndim else float(out)

    def omega(self, t):
        t = np.asarray(t, dtype=float)
        out = self.phi(np.log(np.maximum(t, 1.0)))
        return out if np.ndim(out) else float(out)

    def phi_star(self, x):
        """Young conjugate phi*(x) = sup_{y >= 0} (x*y - phi(y))."""
        x = np.asarray(x, dtype=float)
        kind = self.source[0]
        if kind == "power_log":
            sigma = self.source[1]
            beta = sigma / (sigma - 1.0)
            out = (sigma - 1.0) * (np.maximum(x, 0.0) / sigma) ** beta
        elif kind == "root_power":
            a, c = self.source[1], self.source[2]
            th = c * a
            xx = np.maximum(x, th)
            out = np.where(
                x > th, (xx / a) * np.log(xx / th) - xx / a + c, 0.0
            )
        else:
            out = np.asarray(self._star_pl()(x), dtype=float)
        return out if out.ndim else float(out)

    def _star_pl(self) -> ConvexPL:
        return self.phi_pl.conjugate()

    def growth_class(self) -> tuple | None:
        kind = self.source[0]
        if kind == "power_log":
            return ("logpower", self.source[1])
        if kind == "root_power":
            return ("power", self.source[1])
        seq: LogWeightSequence = self.source[1]
        if seq.tail is None:
            return None
        tkind, u, v = seq.tail.asymptote()
        if tkind == "log":
            return ("power", 1.0 / u) if u > 0 else None
        beta = u + 1.0
        return ("logpower", beta / (beta - 1.0))

    def to_json(self) -> dict:
        kind = self.source[0]
        if kind == "power_log":
            src = {"kind": kind, "sigma": self.source[1]}
        elif kind == "root_power":
            src = {"kind": kind, "a": self.source[1], "c": self.source[2]}
        else:
            src = {"kind": "sequence", "sequence": self.source[1].to_json()}
        return {
            "source": src,
            "valid_to": self.valid_to,
            "label": self.label,
            "phi": None if self.phi_pl is None else self.phi_pl.to_json(),
        }


def make_power_log_weight(sigma: float, label: str = "") -> WeightFunction:
    """omega_s(t) = max(0, (log t)**sigma)."""
    if sigma <= 1:
        raise ValueError("need sigma > 1 for a weight with log t = o(omega)")
    return WeightFunction(
        ("power_log", float(sigma)), None, math.inf, label or f"powerlog:{sigma:g}"
    )


def make_root_power_weight(a: float, c: float = 1.0, label: str = "") -> WeightFunction:
    """omega(t) = max(0, c*(t**a - 1))."""
    if a <= 0 or c <= 0:
        raise ValueError("need a > 0 and c > 0")
    return WeightFunction(
        ("root_power", float(a), float(c)), None, math.inf,
        label or f"rootpower:{a:g},{c:g}",
    )


def associated_function(seq: LogWeightSequence) -> WeightFunction:
    """omega_M(t) = sup_p log(t^p / M_p) as an exact envelope in s = log t."""
    if not seq.is_normalized():
        raise NotNormalized(seq.label or "input sequence")
    P = seq.P
    env = upper_envelope_of_lines(np.arange(P + 1), -seq.L)
    valid_to = env.breakpoints[-1][0]
    return WeightFunction(
        ("sequence", seq), env, valid_to,
        f"omega({seq.label})" if seq.label else "",
    )


def crossing_index_eval(seq: LogWeightSequence, t) -> np.ndarray:
    """Evaluate omega_M via the quotient-crossing index (log-convex input).

    omega_M(t) = p_t*log t - L_{p_t} where mu_{p_t} <= t < mu_{p_t + 1};
    the hull quotients are used so non-convex input is regularized first.
    """
    hull = lc_minorant(seq)
    mu_log = np.diff(hull.L)
    s = np.log(np.maximum(np.asarray(t, dtype=float), 1.0))
    p_t = np.searchsorted(mu_log, s, side="right")
    return p_t * s - hull.L[p_t]


def sequence_from_weight(
    w: WeightFunction, l: float, pmax: int, label: str = ""
) -> LogWeightSequence:
    """The matrix row  j -> exp((1/l) * phi*(l*j))."""
    if l <= 0:
        raise ValueError("parameter l must be positive")
    kind = w.source[0]
    js = np.arange(pmax + 1)
    if kind == "power_log":
        sigma = w.source[1]
        beta = sigma / (sigma - 1.0)
        tail = PowerIndex((sigma - 1.0) * l ** (beta - 1.0) * sigma ** (-beta), beta)
        vals = tail.log_values(js)
    elif kind == "root_power":
        a, c = w.source[1], w.source[2]
        tail = RootPowerDualTail(a, c, l)
        vals = tail.log_values(js)
    else:
        seq: LogWeightSequence = w.source[1]
        hull = lc_minorant(seq)
        max_slope = hull.P
        if l * pmax > max_slope + 1e-9:
            raise DomainExceeded(
                f"need slope {l * pmax:g} but representation ends at {max_slope}"
            )
        stepped = SteppedTail(hull.L, hull.tail, l)
        vals = stepped.log_values(js)
        # a prefix-only parent gives no certified asymptote for the row
        tail = stepped if hull.tail is not None else None
    return LogWeightSequence(
        tuple(vals), tail, 0, label or f"{w.label};l={l:g}"
    )


# -- condition battery --------------------------------------------------

def _pl_exp_integral(phi: ConvexPL, s0: float, s1: float) -> float:
    """integral of phi(s)*exp(-s) ds over [s0, s1] (phi linear pieces)."""
    grid = [s0] + [s for s, _ in phi.breakpoints if s0 < s < s1] + [s1]
    total = 0.0
    for a, b in zip(grid, grid[1:]):
        va, vb = phi((a + b) / 2 - (b - a) / 2), phi((a + b) / 2 + (b - a) / 2)
        m = (vb - va) / (b - a)
        # antiderivative of (va + m*(s-a))e^{-s} is -(phi(s)+m)e^{-s}
        total += (va + m) * math.exp(-a) - (vb + m) * math.exp(-b)
    return total


def check_omega_conditions(w: WeightFunction) -> dict[str, Verdict]:
    cls = w.growth_class()
    out: dict[str, Verdict] = {}

    # (omega0): continuous, increasing, zero on [0,1], divergent at infinity
    phi0 = float(w.phi(0.0))
    increasing = True
    if w.phi_pl is not None:
        increasing = all(m >= -1e-12 for m in w.phi_pl.slopes() if math.isfinite(m))
    if abs(phi0) > 1e-12 or not increasing:
        out["omega0"] = verdicts.fails(phi_at_0=phi0, increasing=increasing)
    else:
        out["omega0"] = verdicts.holds(phi_at_0=phi0)

    out["omega4"] = verdicts.holds(structural="convex piecewise carrier")

    if cls is None:
        grid = np.linspace(1.0, max(w.valid_to, 2.0), 64)
        ratio = float(np.max(w.phi(grid + math.log(2)) / np.maximum(w.phi(grid), 1e-300)))
        for name in ("omega1", "omega2", "omega3", "omega5", "omega6", "omega7", "omega_nq"):
            out[name] = verdicts.inconclusive(
                "no growth class; truncated evidence only", doubling_ratio=ratio
            )
        return out

    kind, expo = cls
    if kind == "power":
        alpha = expo
        out["omega1"] = verdicts.holds(C=2.0 ** alpha)
        out["omega2"] = (
            verdicts.holds(exponent=alpha) if alpha <= 1.0
            else verdicts.fails(exponent=alpha)
        )
        out["omega3"] = verdicts.holds(exponent=alpha)
        out["omega5"] = (
            verdicts.holds(exponent=alpha) if alpha < 1.0
            else verdicts.fails(exponent=alpha)
        )
        H = 2.0 ** math.ceil(1.0 / alpha)
        out["omega6"] = verdicts.holds(H=H)
        out["omega7"] = verdicts.fails(reason_exponent=2 * alpha)
        if alpha < 1.0:
            wit = {}
            if w.phi_pl is not None:
                wit["resolved_integral"] = _pl_exp_integral(w.phi_pl, 0.0, w.valid_to)
            out["omega_nq"] = verdicts.holds(exponent=alpha, **wit)
        else:
            out["omega_nq"] = verdicts.fails(exponent=alpha)
    else:
        sigma = expo
        out["omega1"] = verdicts.holds(C=1.0, note="doubling shifts log t by log 2")
        out["omega2"] = verdicts.holds(subpolynomial=True)
        out["omega3"] = (
            verdicts.holds(sigma=sigma) if sigma > 1.0 else verdicts.fails(sigma=sigma)
        )
        out["omega5"] = verdicts.holds(subpolynomial=True)
        out["omega6"] = verdicts.fails(
            reason="additive shift of log t cannot double (log t)^sigma"
        )
        out["omega7"] = verdicts.holds(C=2.0 ** math.ceil(sigma), H=1.0)
        out["omega_nq"] = verdicts.holds(sigma=sigma)
    return out


def omega_ratio_range(
    w1: WeightFunction, w2: WeightFunction, t_lo: float, t_hi: float, n: int = 512
) -> tuple[float, float]:
    """min and max of omega_1/omega_2 on a geometric grid of [t_lo, t_hi]."""
    t = np.geomspace(t_lo, t_hi, n)
    r = w1.omega(t) / w2.omega(t)
    return float(np.min(r)), float(np.max(r))


def relation_omega(sigma_w: WeightFunction, tau_w: WeightFunction, kind: str) -> Verdict:
    """Relations sigma preceq tau (tau = O(sigma)), sim, and tau = o(sigma)."""
    if kind not in ("preceq", "sim", "triangle"):
        raise ValueError(f"unknown relation kind: {kind}")
    c1, c2 = sigma_w.growth_class(), tau_w.growth_class()
    if c1 is None or c2 is None:
        hi = min(sigma_w.valid_to, tau_w.valid_to)
        if hi <= 1.0:
            return verdicts.inconclusive("no shared domain")
        lo_r, hi_r = omega_ratio_range(tau_w, sigma_w, math.e, math.exp(hi))
        return verdicts.inconclusive(
            "growth class unavailable", ratio_range=(lo_r, hi_r)
        )

    def rank(c):
        # logpower grows slower than every power; encode as (tier, exponent)
        return (0, c[1]) if c[0] == "logpower" else (1, c[1])

    r1, r2 = rank(c1), rank(c2)
    big_o = r2 <= r1          # tau = O(sigma)
    little_o = r2 < r1        # tau = o(sigma)
    if kind == "preceq":
        return verdicts.holds(classes=(c1, c2)) if big_o else verdicts.fails(classes=(c1, c2))
    if kind == "triangle":
        return verdicts.holds(classes=(c1, c2)) if little_o else verdicts.fails(classes=(c1, c2))
    same = r1 == r2
    return verdicts.holds(classes=(c1, c2)) if same else verdicts.fails(classes=(c1, c2))


def _implication(hyp: Verdict, ant: Verdict, cons: Verdict) -> Verdict:
    if hyp.holds and ant.holds:
        if cons.holds:
            return verdicts.holds(consequent=cons.witness)
        if cons.fails:
            return verdicts.fails(consequent=cons.witness)
        return verdicts.inconclusive("consequent undecided")
    if hyp.fails or ant.fails:
        return verdicts.holds(vacuous=True)
    return verdicts.inconclusive("hypothesis or antecedent undecided")


def check_lemma_assofunc(seq: LogWeightSequence) -> Verdict:
    """Self-test: omega_M of an LC sequence is a weight, and the root
    behaviour of m_p = M_p/p! forces (omega2) resp. (omega5)."""
    if not check_in_LC(seq).holds:
        raise ClassMembershipFailed(seq.label or "input sequence")
    w = associated_function(seq)
    conds = check_omega_conditions(w)
    parts = {k: conds[k] for k in ("omega0", "omega3", "omega4")}
    g = root_gap_limit(seq.tail, FactorialPower(1.0, 1.0))
    if g is not None and g > -math.inf:
        parts["omega2_implication"] = _implication(
            verdicts.holds(m_root_liminf_positive=True), verdicts.holds(), conds["omega2"]
        )
    if g == math.inf:
        parts["omega5_implication"] = _implication(
            verdicts.holds(m_root_divergent=True), verdicts.holds(), conds["omega5"]
        )
    return verdicts.conjunction(parts)


def check_relation_comparison(M: LogWeightSequence, N: LogWeightSequence) -> Verdict:
    """Two transfer implications between sequence order and weight order."""
    wM = associated_function(M)
    wN = associated_function(N)
    part1 = _implication(
        check_omega_conditions(wM)["omega1"],
        relation_preceq(M, N),
        relation_omega(wM, wN, "preceq"),
    )
    part2 = _implication(
        check_moderate_growth(N),
        relation_omega(wN, wM, "preceq"),
        relation_preceq(N, M),
    )
    return verdicts.conjunction({"order_transfer": part1, "order_reflect": part2})
