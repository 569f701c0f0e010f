"""Three-valued verdicts with replayable witnesses.

Asymptotic growth conditions cannot be decided from a finite prefix of a
sequence, so every condition tester in this package returns a Verdict that
is either Holds, Fails or Inconclusive.  Holds/Fails always carry a witness
(constants, indices, bracketing sums) that a checker can replay.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any


class Status(enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Verdict:
    status: Status
    witness: dict[str, Any] = field(default_factory=dict)
    reason: str = ""

    @property
    def holds(self) -> bool:
        return self.status is Status.HOLDS

    @property
    def fails(self) -> bool:
        return self.status is Status.FAILS

    @property
    def inconclusive(self) -> bool:
        return self.status is Status.INCONCLUSIVE

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self, condition: str | None = None) -> dict[str, Any]:
        out: dict[str, Any] = {}
        if condition is not None:
            out["condition"] = condition
        out["status"] = self.status.value
        if self.witness:
            out["witness"] = self.witness
        if self.reason:
            out["reason"] = self.reason
        return out


def holds(**witness: Any) -> Verdict:
    return Verdict(Status.HOLDS, witness)


def fails(**witness: Any) -> Verdict:
    return Verdict(Status.FAILS, witness)


def inconclusive(reason: str, **witness: Any) -> Verdict:
    return Verdict(Status.INCONCLUSIVE, witness, reason)


def conjunction(parts: dict[str, Verdict]) -> Verdict:
    """Combine named sub-verdicts: Fails dominates, then Inconclusive.
    The sub-verdicts ride along in the witness so runs can be replayed."""
    detail = {k: v.to_json() for k, v in parts.items()}
    if any(v.fails for v in parts.values()):
        bad = sorted(k for k, v in parts.items() if v.fails)
        return fails(failed=bad, parts=detail)
    if any(v.inconclusive for v in parts.values()):
        open_ = sorted(k for k, v in parts.items() if v.inconclusive)
        return inconclusive("undecided sub-checks: " + ", ".join(open_), parts=detail)
    return holds(checked=sorted(parts), parts=detail)
