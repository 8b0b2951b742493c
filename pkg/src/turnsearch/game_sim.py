"""One-shot plays of the search game and empirical guarantee audits.

Cost model: every completed excursion (out to a turning point and back to
the origin) is charged one combined turn cost ``d``.  The excursion on which
the hider is reached is not charged.  Discovery happens on contact.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from ._numeric import exact_or_float
from .errors import AuditError, InputError
from .strategy import SearchStrategy

__all__ = [
    "GameOutcome",
    "GuaranteeAudit",
    "HiderPlacement",
    "ProbeResult",
    "adversarial_hiders",
    "audit_guarantee",
    "beyond_tip_slacks",
    "max_admissible_epsilon",
    "opt_cost",
    "simulate",
]


@dataclass(frozen=True)
class HiderPlacement:
    ray: int
    distance: Any

    def __post_init__(self) -> None:
        if self.ray < 0:
            raise InputError(f"ray index must be nonnegative, got {self.ray}")
        if not self.distance > 0:
            raise InputError(f"hider must be strictly off the origin, got distance {self.distance}")
        object.__setattr__(self, "distance", exact_or_float(self.distance))


@dataclass(frozen=True)
class GameOutcome:
    found: bool
    travel: Any
    turns: int
    turn_cost_total: Any
    total_cost: Any
    opt: Any
    excursion_found: int | None

    @property
    def ratio(self) -> float:
        return float(self.total_cost) / float(self.opt)


def opt_cost(hider: HiderPlacement) -> Any:
    """Cost of a searcher who knows where the hider is."""
    return hider.distance


def simulate(strategy: SearchStrategy, hider: HiderPlacement) -> GameOutcome:
    if not len(strategy):
        raise InputError("strategy has no steps")
    if hider.ray >= strategy.m:
        raise InputError(f"hider ray {hider.ray} does not exist with m={strategy.m}")
    d = strategy.d
    travel = 0 * d
    for i, x in enumerate(strategy.steps, start=1):
        if strategy.ray_of(i) == hider.ray and x >= hider.distance:
            travel = travel + hider.distance
            turns = i - 1
            return GameOutcome(True, travel, turns, turns * d, travel + turns * d, hider.distance, i)
        travel = travel + 2 * x
    turns = len(strategy)
    return GameOutcome(False, travel, turns, turns * d, travel + turns * d, hider.distance, None)


def max_admissible_epsilon(strategy: SearchStrategy) -> Any:
    """Smallest gap between consecutive turning points on the same ray.

    The origin counts as position 0 on every ray, so the first step on each
    ray also bounds the probe offset.  Rays never visited impose no bound.
    """
    last: dict[int, Any] = {}
    gaps = []
    for i, x in enumerate(strategy.steps, start=1):
        r = strategy.ray_of(i)
        gaps.append(x - last.get(r, 0))
        last[r] = x
    return min(gaps)


def adversarial_hiders(strategy: SearchStrategy, epsilon: Any) -> list[HiderPlacement]:
    """One probe just beyond every turning point, then one near the origin of each ray."""
    if not epsilon > 0:
        raise InputError(f"epsilon must be positive, got {epsilon}")
    if not len(strategy):
        raise InputError("strategy has no steps")
    limit = max_admissible_epsilon(strategy)
    if not epsilon < limit:
        raise InputError(f"epsilon={epsilon} too large; it must be below {limit}")
    eps = exact_or_float(epsilon)
    probes = [HiderPlacement(strategy.ray_of(i), x + eps) for i, x in enumerate(strategy.steps, 1)]
    probes += [HiderPlacement(r, eps) for r in range(strategy.m)]
    return probes


@dataclass(frozen=True)
class ProbeResult:
    hider: HiderPlacement
    outcome: GameOutcome
    slack: Any
    kind: str


@dataclass(frozen=True)
class GuaranteeAudit:
    ratio_coefficient: Any
    additive: Any
    epsilon: Any
    worst_slack: Any
    argmax: HiderPlacement
    probes: tuple[ProbeResult, ...] = field(repr=False)
    d: Any = None
    m: int = 2

    @property
    def holds(self) -> bool:
        return self.worst_slack <= 0

    def to_dict(self) -> dict:
        f = float
        return {
            "c": f(self.ratio_coefficient),
            "B": f(self.additive),
            "d": f(self.d),
            "m": self.m,
            "epsilon": f(self.epsilon),
            "worst_slack": f(self.worst_slack),
            "argmax": {"ray": self.argmax.ray, "distance": f(self.argmax.distance)},
            "probes": [
                {
                    "kind": p.kind,
                    "ray": p.hider.ray,
                    "distance": f(p.hider.distance),
                    "total_cost": f(p.outcome.total_cost),
                    "turns": p.outcome.turns,
                    "slack": f(p.slack),
                }
                for p in self.probes
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def csv_rows(self) -> list[list[str]]:
        rows = [["kind", "ray", "distance", "total_cost", "turns", "slack"]]
        for p in self.probes:
            rows.append([
                p.kind,
                str(p.hider.ray),
                repr(float(p.hider.distance)),
                repr(float(p.outcome.total_cost)),
                str(p.outcome.turns),
                repr(float(p.slack)),
            ])
        return rows


def audit_guarantee(
    strategy: SearchStrategy,
    c: Any,
    B: Any,
    epsilon: Any = None,
    extra_probes: int = 0,
    seed: int = 0,
) -> GuaranteeAudit:
    """Worst ``total_cost - c * opt - B`` over adversarial and random hiders.

    Probes beyond the last ``m`` turning points are skipped: their cost
    depends on steps outside the prefix.  Random probes are drawn uniformly
    from the explored part of each ray with a seeded generator; ties in the
    argmax go to the earliest probe.
    """
    if epsilon is None:
        epsilon = (strategy.d or 1) * Fraction(1, 10**8)
    c = exact_or_float(c)
    B = exact_or_float(B)
    placements = adversarial_hiders(strategy, epsilon)
    N, m = len(strategy), strategy.m
    kinds = ["tip"] * N + ["origin"] * m
    keep = [k for k, p in enumerate(placements) if not (kinds[k] == "tip" and k >= N - m)]
    placements = [placements[k] for k in keep]
    kinds = [kinds[k] for k in keep]

    rng = random.Random(seed)
    reach = strategy.reach()
    rays = [r for r in range(m) if reach[r] > 0]
    for _ in range(extra_probes):
        if not rays:
            break
        r = rays[rng.randrange(len(rays))]
        placements.append(HiderPlacement(r, reach[r] * (1.0 - rng.random())))
        kinds.append("random")

    results = []
    for hider, kind in zip(placements, kinds):
        out = simulate(strategy, hider)
        if not out.found:
            raise AuditError(
                f"probe on ray {hider.ray} at {float(hider.distance)} not reached; strategy prefix too short"
            )
        results.append(ProbeResult(hider, out, out.total_cost - c * out.opt - B, kind))
    if not results:
        raise AuditError("no probes to evaluate")
    worst = max(range(len(results)), key=lambda k: (results[k].slack, -k))
    return GuaranteeAudit(
        ratio_coefficient=c,
        additive=B,
        epsilon=exact_or_float(epsilon),
        worst_slack=results[worst].slack,
        argmax=results[worst].hider,
        probes=tuple(results),
        d=strategy.d,
        m=m,
    )


def beyond_tip_slacks(strategy: SearchStrategy, c: Any, B: Any, epsilon: Any) -> list[tuple[int, Any]]:
    """``(i, slack)`` for every resolvable probe just beyond turning point ``i``."""
    out = []
    eps = exact_or_float(epsilon)
    for i in range(1, len(strategy) - strategy.m + 1):
        hider = HiderPlacement(strategy.ray_of(i), strategy.step(i) + eps)
        res = simulate(strategy, hider)
        out.append((i, res.total_cost - c * res.opt - B))
    return out

