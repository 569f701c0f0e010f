"""Symbolic tails of weight sequences.

A truncated sequence stores log M_p only up to an index P, which is never
enough to decide an asymptotic condition.  A Tail is a closed-form rule for
log M_p valid from some index on; it supports exact evaluation at huge
(float-representable) integers via lgamma and exposes a coarse asymptotic
key for its root sequence p -> log(M_p)/p:

    ("log", alpha, beta):   root(p) = alpha*log p + beta + o(1)
    ("poly", gamma, kappa): root(p) = kappa * p**gamma * (1 + o(1)), gamma > 0

The key is all that is needed to decide the quotient-series conditions and
the pairwise root-limit relations exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Tail",
    "FactorialPower",
    "PowerIndex",
    "SteppedTail",
    "RootPowerDualTail",
    "root_gap_limit",
    "geometric_mean",
]


class Tail:
    """Closed-form continuation of a log weight sequence."""

    def log_value(self, p: float) -> float:
        raise NotImplementedError

    def log_values(self, ps) -> np.ndarray:
        return np.array([self.log_value(float(p)) for p in np.atleast_1d(ps)])

    def root(self, p: float) -> float:
        return self.log_value(p) / p

    def mu_log(self, p: float) -> float:
        """log mu_p = log M_p - log M_{p-1}."""
        return self.log_value(p) - self.log_value(p - 1)

    def asymptote(self) -> tuple:
        raise NotImplementedError

    def is_log_convex(self) -> bool:
        raise NotImplementedError

    # certified bounds; None means "not available for this tail family"

    def reciprocal_mu_tail_bounds(self, P: int) -> tuple[float, float] | None:
        """Bracket for sum_{p > P} 1/mu_p, or None."""
        return None

    def root_sum_tail_upper(self, X: float) -> float | None:
        """Certified upper bound for sum_{p > X} exp(-root(p)), or None."""
        return None

    def power(self, r: float) -> "Tail":
        """Tail of p -> M_p**r."""
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class FactorialPower(Tail):
    """M_p = p!**s * a**p; the Gevrey family is a = 1."""

    s: float
    a: float = 1.0

    def __post_init__(self):
        if self.s < 0 or self.a <= 0:
            raise ValueError("need s >= 0 and a > 0")

    def log_value(self, p: float) -> float:
        return self.s * math.lgamma(p + 1.0) + p * math.log(self.a)

    def asymptote(self) -> tuple:
        # log p!/p = log p - 1 + o(1)
        return ("log", self.s, math.log(self.a) - self.s)

    def is_log_convex(self) -> bool:
        return True

    def reciprocal_mu_tail_bounds(self, P: int) -> tuple[float, float] | None:
        # mu_p = a * p**s exactly; integral test around sum_{p>P} 1/(a p**s)
        s, a = self.s, self.a
        if s <= 1.0:
            return None
        hi = P ** (1.0 - s) / (a * (s - 1.0))
        lo = (P + 1.0) ** (1.0 - s) / (a * (s - 1.0))
        return (lo, hi)

    def root_sum_tail_upper(self, X: float) -> float | None:
        # root(p) >= s*(log p - 1) + log a since log p! >= p log p - p,
        # so exp(-root(p)) <= (e**s/a) p**-s and the integral test applies.
        s, a = self.s, self.a
        if s <= 1.0:
            return None
        return (math.exp(s) / a) * X ** (1.0 - s) / (s - 1.0)

    def power(self, r: float) -> "FactorialPower":
        return FactorialPower(self.s * r, self.a ** r)

    def to_json(self) -> dict:
        if self.a == 1.0:
            return {"family": "gevrey", "s": self.s}
        return {"family": "factorial_power", "s": self.s, "a": self.a}


@dataclass(frozen=True)
class PowerIndex(Tail):
    """log M_p = kappa * p**beta (rows derived from power-log weights)."""

    kappa: float
    beta: float

    def __post_init__(self):
        if self.kappa <= 0 or self.beta < 1:
            raise ValueError("need kappa > 0 and beta >= 1")

    def log_value(self, p: float) -> float:
        return self.kappa * p ** self.beta

    def asymptote(self) -> tuple:
        if self.beta == 1.0:
            return ("log", 0.0, self.kappa)
        return ("poly", self.beta - 1.0, self.kappa)

    def is_log_convex(self) -> bool:
        return True

    def power(self, r: float) -> "PowerIndex":
        return PowerIndex(self.kappa * r, self.beta)

    def to_json(self) -> dict:
        return {"family": "power_index", "kappa": self.kappa, "beta": self.beta}


class SteppedTail(Tail):
    """Tail of the subsequence-root row  j -> (M_{l j})**(1/l).

    Between the stored integer indices of the parent the log values are
    interpolated linearly (the parent row is used only when log-convex, so
    the interpolant is the exact piecewise-linear hull evaluation); beyond
    the stored prefix the parent tail takes over.
    """

    def __init__(self, parent_log_values, parent_tail: Tail | None, l: float):
        if l <= 0:
            raise ValueError("step must be positive")
        self.parent_log_values = np.asarray(parent_log_values, dtype=float)
        self.parent_tail = parent_tail
        self.l = float(l)

    def _parent_log(self, x: float) -> float:
        last = len(self.parent_log_values) - 1
        if x <= last:
            return float(np.interp(x, np.arange(last + 1), self.parent_log_values))
        if self.parent_tail is None:
            raise ValueError("parent prefix exhausted and no parent tail")
        return self.parent_tail.log_value(x)

    def log_value(self, p: float) -> float:
        return self._parent_log(self.l * p) / self.l

    def asymptote(self) -> tuple:
        if self.parent_tail is None:
            raise ValueError("stepped tail over a prefix-only parent has no asymptote")
        kind, u, v = self.parent_tail.asymptote()
        if kind == "log":
            return ("log", u, v + u * math.log(self.l))
        return ("poly", u, v * self.l ** u)

    def is_log_convex(self) -> bool:
        return True

    def power(self, r: float) -> "Tail":
        base = None if self.parent_tail is None else self.parent_tail.power(r)
        return SteppedTail(self.parent_log_values * r, base, self.l)

    def to_json(self) -> dict:
        return {
            "family": "stepped",
            "l": self.l,
            "parent_tail": None if self.parent_tail is None else self.parent_tail.to_json(),
            "parent_len": len(self.parent_log_values),
        }


@dataclass(frozen=True)
class RootPowerDualTail(Tail):
    """Row of the matrix associated to omega(t) = max(0, c*(t**a - 1)).

    log M_j = (1/l) * phi_star(l*j) with the closed-form conjugate of
    phi(y) = c*(exp(a*y) - 1).
    """

    a: float
    c: float
    l: float

    def log_value(self, p: float) -> float:
        x = self.l * p
        th = self.c * self.a
        if x <= th:
            return 0.0
        val = (x / self.a) * math.log(x / th) - x / self.a + self.c
        return val / self.l

    def asymptote(self) -> tuple:
        alpha = 1.0 / self.a
        beta = (math.log(self.l) - math.log(self.c * self.a) - 1.0) / self.a
        return ("log", alpha, beta)

    def is_log_convex(self) -> bool:
        return True

    def power(self, r: float) -> "Tail":
        raise NotImplementedError("no closed form for powers of this family")

    def to_json(self) -> dict:
        return {"family": "root_power_dual", "a": self.a, "c": self.c, "l": self.l}


def root_gap_limit(t1: Tail | None, t2: Tail | None) -> float | None:
    """Limit of root_1(p) - root_2(p) as p -> infinity.

    Returns +-inf or a finite number; None when either tail is missing.
    The finite case relies on the tails being exact closed forms, so equal
    asymptotic keys of "poly" type mean equal functions to o(1).
    """
    if t1 is None or t2 is None:
        return None
    k1, k2 = t1.asymptote(), t2.asymptote()
    p1, p2 = k1[0] == "poly", k2[0] == "poly"
    if p1 and p2:
        g1, c1 = k1[1], k1[2]
        g2, c2 = k2[1], k2[2]
        if g1 != g2:
            return math.inf if g1 > g2 else -math.inf
        if c1 != c2:
            return math.inf if c1 > c2 else -math.inf
        return 0.0
    if p1:
        return math.inf
    if p2:
        return -math.inf
    a1, b1 = k1[1], k1[2]
    a2, b2 = k2[1], k2[2]
    if a1 != a2:
        return math.inf if a1 > a2 else -math.inf
    return b1 - b2


def geometric_mean(t1: Tail | None, t2: Tail | None, w: float = 0.5) -> Tail | None:
    """Tail of p -> M_p**w * N_p**(1-w) when a closed form exists."""
    if isinstance(t1, FactorialPower) and isinstance(t2, FactorialPower):
        return FactorialPower(
            w * t1.s + (1 - w) * t2.s,
            t1.a ** w * t2.a ** (1 - w),
        )
    return None


def tail_from_json(d: dict | None) -> Tail | None:
    if d is None:
        return None
    fam = d["family"]
    if fam == "gevrey":
        return FactorialPower(float(d["s"]), 1.0)
    if fam == "factorial_power":
        return FactorialPower(float(d["s"]), float(d.get("a", 1.0)))
    if fam == "power_index":
        return PowerIndex(float(d["kappa"]), float(d["beta"]))
    if fam == "root_power_dual":
        return RootPowerDualTail(float(d["a"]), float(d["c"]), float(d["l"]))
    raise ValueError(f"unknown tail family: {fam}")
