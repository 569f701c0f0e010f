"""Weight sequences in log domain: derived quantities, growth conditions,
pairwise relations, and the two regularizations.

Everything is stored and compared as L_p = log M_p.  Conditions that are
asymptotic (non-quasianalyticity, moderate growth, root divergence, ...)
are decided exactly when the sequence carries a symbolic tail and reported
Inconclusive otherwise.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import verdicts
from .convex import lower_hull
from .errors import NotLogConvex, NotNormalized
from .tails import FactorialPower, Tail, root_gap_limit
from .verdicts import Verdict

LOG_TOL = 1e-12
TAIL_CONSISTENCY_TOL = 1e-9


@dataclass(frozen=True)
class LogWeightSequence:
    """A weight sequence truncated at index P, stored as log values.

    tail, when present, is a closed-form rule valid for p >= tail_from and
    must agree with the stored prefix on [tail_from, P].  A non-zero
    tail_from admits finitely perturbed members of a symbolic family.
    """

    log_values: tuple[float, ...]
    tail: Tail | None = None
    tail_from: int = 0
    label: str = ""

    def __post_init__(self):
        L = np.asarray(self.log_values, dtype=float)
        if L.size < 3:
            raise ValueError("need at least indices p = 0, 1, 2")
        if not np.all(np.isfinite(L)):
            raise ValueError("log values must be finite")
        object.__setattr__(self, "log_values", tuple(float(v) for v in L))
        if self.tail is not None:
            lo = max(self.tail_from, 0)
            ps = np.arange(lo, L.size)
            want = self.tail.log_values(ps)
            err = np.max(np.abs(want - L[lo:]) / np.maximum(1.0, np.abs(want)))
            if err > TAIL_CONSISTENCY_TOL:
                raise ValueError(
                    f"tail disagrees with stored prefix (rel err {err:.3g})"
                )

    # -- constructors ---------------------------------------------------

    @staticmethod
    def from_tail(tail: Tail, pmax: int, label: str = "", tail_from: int = 0) -> "LogWeightSequence":
        vals = tail.log_values(np.arange(pmax + 1))
        return LogWeightSequence(tuple(vals), tail, tail_from, label)

    @staticmethod
    def gevrey(s: float, pmax: int = 200, label: str = "") -> "LogWeightSequence":
        return LogWeightSequence.from_tail(
            FactorialPower(s, 1.0), pmax, label or f"gevrey:{s:g}"
        )

    @staticmethod
    def factorial_power(s: float, a: float, pmax: int = 200, label: str = "") -> "LogWeightSequence":
        return LogWeightSequence.from_tail(
            FactorialPower(s, a), pmax, label or f"factorial_power:{s:g},{a:g}"
        )

    @staticmethod
    def from_values(values, label: str = "") -> "LogWeightSequence":
        return LogWeightSequence(tuple(float(v) for v in values), None, 0, label)

    # -- accessors ------------------------------------------------------

    @property
    def P(self) -> int:
        return len(self.log_values) - 1

    @property
    def L(self) -> np.ndarray:
        return np.asarray(self.log_values)

    def log_at(self, p: float) -> float:
        """log M_p, using the symbolic tail beyond the stored prefix."""
        if p <= self.P and float(p).is_integer():
            return self.log_values[int(p)]
        if self.tail is None:
            raise IndexError(f"p={p} beyond prefix and no tail")
        return self.tail.log_value(p)

    def root(self, p: float) -> float:
        """(M_p)^{1/p} in log domain, i.e. L_p / p."""
        if p <= 0:
            raise ValueError("roots defined for p >= 1")
        return self.log_at(p) / p

    def is_normalized(self, tol: float = LOG_TOL) -> bool:
        return abs(self.log_values[0]) <= tol and self.log_values[1] >= -tol

    def with_label(self, label: str) -> "LogWeightSequence":
        return replace(self, label=label)

    def to_json(self) -> dict:
        out = {"pmax": self.P, "label": self.label}
        if self.tail is not None:
            out.update(self.tail.to_json())
            if self.tail_from:
                out["tail_from"] = self.tail_from
        else:
            out["log_values"] = list(self.log_values)
        return out


@dataclass(frozen=True)
class DerivedQuotients:
    mu: tuple[float, ...]       # mu_0 = 1, mu_p = M_p / M_{p-1}
    m_log: tuple[float, ...]    # log m_p = log(M_p / p!)


def derive_quotients(seq: LogWeightSequence) -> DerivedQuotients:
    L = seq.L
    mu = np.exp(np.diff(L))
    m_log = L - np.array([math.lgamma(p + 1) for p in range(seq.P + 1)])
    return DerivedQuotients((1.0, *map(float, mu)), tuple(map(float, m_log)))


# -- growth conditions --------------------------------------------------

def check_log_convex(seq: LogWeightSequence) -> Verdict:
    L = seq.L
    d2 = L[2:] - 2 * L[1:-1] + L[:-2]
    bad = np.nonzero(d2 < -LOG_TOL)[0]
    if bad.size:
        p = int(bad[0]) + 1
        return verdicts.fails(index=p, second_difference=float(d2[bad[0]]))
    if seq.tail is not None and not seq.tail.is_log_convex():
        return verdicts.fails(reason_index="tail")
    if seq.tail is None:
        # convex prefix only; the condition is about all p but every
        # violation would be visible at finite p, so a convex prefix is
        # the best possible finite evidence
        return verdicts.holds(checked_upto=seq.P, prefix_only=True)
    return verdicts.holds(checked_upto=seq.P, min_second_difference=float(d2.min()))


def check_in_LC(seq: LogWeightSequence) -> Verdict:
    if not seq.is_normalized():
        return verdicts.fails(L0=seq.log_values[0], L1=seq.log_values[1])
    lc = check_log_convex(seq)
    if lc.fails:
        return verdicts.fails(**lc.witness)
    if seq.tail is not None:
        kind, u, v = seq.tail.asymptote()
        if kind == "poly" or u > 0:
            return verdicts.holds(root_growth=(kind, u, v))
        return verdicts.fails(root_limit=math.exp(v))
    half = seq.P // 2
    slope = seq.root(seq.P) - seq.root(max(half, 1))
    if slope < 0.1:
        return verdicts.inconclusive(
            "no tail and prefix root slope too small to suggest divergence",
            prefix_root_slope=float(slope),
        )
    return verdicts.holds(prefix_root_slope=float(slope), prefix_only=True)


def _mg_prefix_constant(L: np.ndarray) -> tuple[float, int, int]:
    """max over j+k <= P of (L_{j+k} - L_j - L_k)/(j+k), with arg."""
    best, bj, bm = -math.inf, 0, 1
    for m in range(1, L.size):
        conv = L[: m + 1] + L[m::-1]     # L_j + L_{m-j}, j = 0..m
        j = int(np.argmin(conv))
        val = (L[m] - conv[j]) / m
        if val > best:
            best, bj, bm = float(val), j, m
    return best, bj, bm


def check_moderate_growth(seq: LogWeightSequence) -> Verdict:
    best, j, m = _mg_prefix_constant(seq.L)
    C = math.exp(best)
    if seq.tail is None:
        return verdicts.inconclusive("prefix only", prefix_C=C, at=(j, m - j))
    kind = seq.tail.asymptote()[0]
    if kind == "log":
        # L_p = O(p log p) with slowly varying increments keeps the
        # defect (L_{j+k} - L_j - L_k)/(j+k) bounded
        return verdicts.holds(C=C, at=(j, m - j))
    return verdicts.fails(divergent_defect=True, prefix_C=C)


def _series_converges(asym: tuple) -> bool:
    """Does sum 1/mu_p (equivalently sum exp(-root)) converge for this key?"""
    kind, u, _ = asym
    return kind == "poly" or u > 1.0


def _mu_partial_sum(seq: LogWeightSequence) -> float:
    return float(np.sum(np.exp(-np.diff(seq.L))))


def check_nq(seq: LogWeightSequence) -> Verdict:
    partial = _mu_partial_sum(seq)
    if seq.tail is None:
        return verdicts.inconclusive("prefix only", partial_sum=partial)
    if not _series_converges(seq.tail.asymptote()):
        return verdicts.fails(partial_sum=partial, divergent=True)
    bounds = seq.tail.reciprocal_mu_tail_bounds(seq.P)
    if bounds is not None:
        lo, hi = bounds
        return verdicts.holds(sum_low=partial + lo, sum_high=partial + hi)
    # convergence decided by the asymptotic key; extend the sum far enough
    # that the remainder is visibly small, report without a certified bracket
    ext = sum(
        math.exp(-seq.tail.mu_log(p)) for p in range(seq.P + 1, seq.P + 2001)
    )
    return verdicts.holds(sum_low=partial + ext, certified_bracket=False)


def _root_series_verdict(seq: LogWeightSequence) -> Verdict:
    """Convergence of sum_p 1/(M_p)^{1/p} via the same bracketing."""
    L = seq.L
    partial = float(np.sum(np.exp(-L[1:] / np.arange(1, L.size))))
    if seq.tail is None:
        return verdicts.inconclusive("prefix only", partial_sum=partial)
    if not _series_converges(seq.tail.asymptote()):
        return verdicts.fails(partial_sum=partial, divergent=True)
    hi = seq.tail.root_sum_tail_upper(seq.P)
    if hi is not None:
        return verdicts.holds(sum_low=partial, sum_high=partial + hi)
    return verdicts.holds(sum_low=partial, certified_bracket=False)


def check_carleman_consistency(seq: LogWeightSequence) -> Verdict:
    lc = check_log_convex(seq)
    if not lc.holds:
        raise NotLogConvex(seq.label or "input sequence")
    v_mu = check_nq(seq)
    v_root = _root_series_verdict(seq)
    if v_mu.inconclusive or v_root.inconclusive:
        return verdicts.inconclusive(
            "either series undecided at truncation",
            mu_route=v_mu.status.value,
            root_route=v_root.status.value,
        )
    if v_mu.status is v_root.status:
        return verdicts.holds(common=v_mu.status.value)
    return verdicts.fails(mu_route=v_mu.status.value, root_route=v_root.status.value)


def check_beta3(seq: LogWeightSequence, Q_max: int = 8) -> Verdict:
    if Q_max < 2:
        raise ValueError("Q_max must be at least 2")
    if seq.tail is not None:
        kind, u, _ = seq.tail.asymptote()
        if kind == "poly":
            return verdicts.holds(Q=2, ratio_limit=math.inf)
        if u > 0:
            return verdicts.holds(Q=2, ratio_limit=2.0 ** u)
        return verdicts.fails(ratio_limit=1.0)
    mu = np.exp(np.diff(seq.L))
    for Q in range(2, Q_max + 1):
        lo = max(1, seq.P // 4)
        ps = [p for p in range(lo, seq.P + 1) if Q * p <= seq.P]
        if not ps:
            break
        worst = min(mu[Q * p - 1] / mu[p - 1] for p in ps)
        if worst >= 1.05:
            return verdicts.holds(Q=Q, min_ratio=float(worst), prefix_only=True)
    return verdicts.inconclusive("no witness Q on prefix", Q_max=Q_max)


# -- pairwise relations -------------------------------------------------

def _prefix_gaps(M: LogWeightSequence, N: LogWeightSequence) -> np.ndarray:
    P = min(M.P, N.P)
    ps = np.arange(1, P + 1)
    return (M.L[1 : P + 1] - N.L[1 : P + 1]) / ps


def _sampled_gap_sup(M: LogWeightSequence, N: LogWeightSequence) -> float:
    """Root-gap samples beyond the shared prefix (both tails required)."""
    P = min(M.P, N.P)
    ps = np.unique(np.round(np.geomspace(P + 1, 1e6, 40)))
    return max(M.root(p) - N.root(p) for p in ps)


def relation_preceq(M: LogWeightSequence, N: LogWeightSequence) -> Verdict:
    """M precsim N: sup_p (M_p/N_p)^{1/p} finite."""
    gaps = _prefix_gaps(M, N)
    prefix_sup = float(gaps.max())
    g = root_gap_limit(M.tail, N.tail)
    if g is None:
        return verdicts.inconclusive("no tail on one side", prefix_sup=math.exp(prefix_sup))
    if g == math.inf:
        return verdicts.fails(gap_limit="+inf")
    sup = max(prefix_sup, g, _sampled_gap_sup(M, N))
    return verdicts.holds(C1=math.exp(sup), gap_limit=g)


def relation_triangle(M: LogWeightSequence, N: LogWeightSequence) -> Verdict:
    """M strictly smaller: (M_p/N_p)^{1/p} -> 0."""
    g = root_gap_limit(M.tail, N.tail)
    if g is None:
        gaps = _prefix_gaps(M, N)
        return verdicts.inconclusive("no tail on one side", last_gap=float(gaps[-1]))
    if g == -math.inf:
        return verdicts.holds(gap_limit="-inf")
    return verdicts.fails(ratio_limit=math.exp(g) if g < math.inf else math.inf)


def relation_approx(M: LogWeightSequence, N: LogWeightSequence) -> Verdict:
    return verdicts.conjunction(
        {"forward": relation_preceq(M, N), "backward": relation_preceq(N, M)}
    )


# -- regularizations ----------------------------------------------------

def lc_minorant(seq: LogWeightSequence) -> LogWeightSequence:
    """Log-convex minorant: lower convex hull of the points (p, L_p)."""
    pts = [(float(p), v) for p, v in enumerate(seq.log_values)]
    hull = lower_hull(pts)
    xs = np.array([x for x, _ in hull])
    ys = np.array([y for _, y in hull])
    out = np.interp(np.arange(seq.P + 1), xs, ys)
    unchanged = bool(np.max(np.abs(out - seq.L)) <= LOG_TOL)
    if unchanged:
        return replace(seq, label=seq.label)
    tail = seq.tail if (seq.tail is not None and seq.tail.is_log_convex()) else None
    return LogWeightSequence(
        tuple(out),
        tail,
        seq.P if tail is not None else 0,
        f"lc({seq.label})" if seq.label else "",
    )


def increasing_root_minorant(seq: LogWeightSequence) -> LogWeightSequence:
    """Largest minorant whose root sequence (M_k)^{1/k} is non-decreasing."""
    P = seq.P
    roots = seq.L[1:] / np.arange(1, P + 1)
    suffix = np.minimum.accumulate(roots[::-1])[::-1]
    if seq.tail is not None:
        # the suffix infimum also ranges over the symbolic continuation
        probe = min(seq.tail.root(p) for p in (P + 1, 2 * P + 2, 10 * P + 10))
        kind, u, v = seq.tail.asymptote()
        if kind == "log" and u == 0.0:
            probe = min(probe, v)
        suffix = np.minimum(suffix, probe)
    out = np.concatenate(([0.0], suffix * np.arange(1, P + 1)))
    out[0] = seq.log_values[0] if abs(seq.log_values[0]) <= LOG_TOL else 0.0
    if np.max(np.abs(out - seq.L)) <= LOG_TOL:
        return seq
    # only a finite stretch changed; the symbolic continuation still applies
    # from P on whenever the final stored value survived
    keep = seq.tail is not None and abs(out[-1] - seq.L[-1]) <= LOG_TOL
    return LogWeightSequence(
        tuple(out),
        seq.tail if keep else None,
        P if keep else 0,
        f"I({seq.label})" if seq.label else "",
    )


def lc_minorant_oracle(seq: LogWeightSequence) -> np.ndarray:
    """Independent pairwise interpolation formula for the hull (O(P^3)).

    M^lc_j = min over k <= j <= l of M_k^{(l-j)/(l-k)} M_l^{(j-k)/(l-k)},
    in log domain.  Used only as a test oracle for lc_minorant.
    """
    L = seq.L
    P = seq.P
    out = np.array(L, dtype=float)
    for j in range(P + 1):
        best = L[j]
        for k in range(0, j + 1):
            for l in range(j, P + 1):
                if l == k:
                    continue
                w = (j - k) / (l - k)
                best = min(best, (1 - w) * L[k] + w * L[l])
        out[j] = best
    return out
