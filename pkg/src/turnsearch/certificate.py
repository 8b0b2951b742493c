"""Finite-depth optimality certificates for the search LPs."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any


class Verdict(enum.Enum):
    CERTIFIED = "Certified"
    FAILED = "Failed"


@dataclass(frozen=True)
class OptimalityCertificate:
    """Primal tightness, dual feasibility and objective equality at depth ``N``.

    ``constraint_residuals[j]`` is ``B - LHS`` of constraint ``j`` under the
    closed-form strategy and ``dual_column_residuals[i]`` is the dual
    combination of column ``x_{i+1}`` including the tail beyond ``N``.
    """

    constraint_residuals: tuple
    dual_column_residuals: tuple
    dual_objective: Any
    primal_objective: Any
    verdict: Verdict
    reasons: tuple[str, ...] = ()
    mass_residual: Any = 0
    max_relative_residual: float = 0.0
    details: dict = field(default_factory=dict, compare=False)

    @property
    def certified(self) -> bool:
        return self.verdict is Verdict.CERTIFIED

    @property
    def reason(self) -> str | None:
        return "; ".join(self.reasons) if self.reasons else None

    def summary(self) -> str:
        if self.certified:
            return f"Certified: primal={self.primal_objective} dual={self.dual_objective}"
        return f"Failed: {self.reason}"


def judge(reasons: list[str]) -> tuple[Verdict, tuple[str, ...]]:
    return (Verdict.FAILED if reasons else Verdict.CERTIFIED), tuple(reasons)
