"""Star search on ``m`` rays with turn cost.

Constraint ``j`` is indexed by the number of turns it charges: the startup
row (hider near the origin of the last ray) has ``j = m - 1`` and the row
for a hider just beyond turning point ``k`` has ``j = k + m - 1``.  The depth
``n`` program has rows ``j = m-1 .. n+m-1`` and variables
``x_1 .. x_{n+m-1}, B``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable

import numpy as np

from ._numeric import exact_or_float
from .certificate import OptimalityCertificate, judge
from .errors import InputError
from .line_model import extrapolate_limit
from .lp_core import FLOAT64, RATIONAL, ArithmeticMode, LinearProgram, solve
from .strategy import SearchStrategy

__all__ = [
    "StarDualSequence",
    "StarInstance",
    "StarLimitRow",
    "build_star_lp",
    "certify_star_optimality",
    "closed_form_star_strategy",
    "star_additive_term",
    "star_dual_sequence",
    "star_limit_table",
    "star_lambda",
]


@dataclass(frozen=True)
class StarInstance:
    """``m`` rays with combined turn cost ``d = d1 + d2``.

    Only the sum enters the model; the split is kept for reporting.
    """

    m: int = 2
    d: Any = 1
    d1: Any = None
    d2: Any = None

    def __post_init__(self) -> None:
        if not isinstance(self.m, (int, np.integer)) or self.m < 2:
            raise InputError(f"star search needs an integer m >= 2, got {self.m!r}")
        d = self.d
        if self.d1 is not None or self.d2 is not None:
            d1 = exact_or_float(self.d1 or 0)
            d2 = exact_or_float(self.d2 or 0)
            if d1 < 0 or d2 < 0:
                raise InputError("turn cost components must be nonnegative")
            d = d1 + d2
        if d < 0:
            raise InputError(f"turn cost must be nonnegative, got {d}")
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "d", exact_or_float(d))

    @property
    def q(self) -> Fraction:
        return Fraction(self.m, self.m - 1)

    @property
    def M(self) -> Fraction:
        return Fraction(self.m**self.m, (self.m - 1) ** (self.m - 1))

    @property
    def ratio(self) -> Fraction:
        """Competitive coefficient ``1 + 2M``."""
        return 1 + 2 * self.M


def build_star_lp(inst: StarInstance, n: int, c: Any = None) -> LinearProgram:
    """Depth-``n`` program: the startup row plus one row per turning point.

    ``c`` overrides the competitive coefficient ``1 + 2M``; the hider term is
    then ``(c - 1) x_k`` on the right-hand side.
    """
    if n < 1:
        raise InputError(f"depth n must be at least 1, got {n}")
    m = inst.m
    hider = inst.ratio - 1 if c is None else exact_or_float(c) - 1
    nv = n + m - 1
    rows = []
    rhs = []
    start = [2 if i < m - 1 else 0 for i in range(nv)] + [-1]
    rows.append(start)
    rhs.append(-(m - 1) * inst.d)
    for k in range(1, n + 1):
        row: list[Any] = [2 if i < k + m - 1 else 0 for i in range(nv)] + [-1]
        row[k - 1] = 2 - hider
        rows.append(row)
        rhs.append(-(k + m - 1) * inst.d)
    return LinearProgram(objective=[0] * nv + [1], matrix=rows, rhs=rhs)


def closed_form_star_strategy(inst: StarInstance, N: int) -> SearchStrategy:
    """``x_i = d (q^i - 1) / 2`` with ``q = m / (m - 1)``."""
    if N < 1:
        raise InputError(f"N must be at least 1, got {N}")
    q = inst.q if isinstance(inst.d, Fraction) else float(inst.q)
    return SearchStrategy(tuple(inst.d * (q**i - 1) / 2 for i in range(1, N + 1)), inst.d, inst.m)


def star_additive_term(inst: StarInstance) -> Any:
    """Optimal additive term ``B = (M - m) d``."""
    M = inst.M if isinstance(inst.d, Fraction) else float(inst.M)
    return (M - inst.m) * inst.d


@dataclass(frozen=True)
class StarDualSequence:
    """Dual multipliers ``y_{m-1} .. y_N`` generated by the complementary-slackness recursion.

    ``values[k]`` is ``y_{m-1+k}``; lower indices are zero by convention.
    """

    m: int
    values: tuple
    M: Fraction
    partial_sum: Any
    partial_weighted_sum: Any

    @property
    def first_index(self) -> int:
        return self.m - 1

    @property
    def N(self) -> int:
        return self.m - 2 + len(self.values)

    def __getitem__(self, j: int) -> Any:
        if j < self.m - 1:
            return 0
        return self.values[j - self.m + 1]

    def items(self) -> Iterable[tuple[int, Any]]:
        return enumerate(self.values, start=self.m - 1)


def _roll_duals(m: int, M: Any, N: int) -> list:
    """``y_{m-1} .. y_N`` as a list indexed from ``m - 1``."""
    one = M / M
    y = [m * one / M] + [one / M] * (m - 1)
    while len(y) < N - m + 2:
        # next index t = m - 1 + len(y); y_{t-m} sits at position len(y) - m
        y.append(y[-1] - y[len(y) - m] / M)
    return y[: N - m + 2]


def star_dual_sequence(inst: StarInstance, N: int, mode: ArithmeticMode = RATIONAL) -> StarDualSequence:
    """Duals from ``y_{m-1} = m/M``, ``y_m = .. = y_{2m-2} = 1/M`` and
    ``y_{t} = y_{t-1} - y_{t-m} / M``."""
    m = inst.m
    if N < 2 * m - 2:
        raise InputError(f"need N >= 2m-2 = {2 * m - 2}, got {N}")
    M = mode.scalar(inst.M)
    y = _roll_duals(m, M, N)
    total = sum(y, M * 0)
    weighted = sum((j * v for j, v in enumerate(y, start=m - 1)), M * 0)
    return StarDualSequence(m, tuple(y), inst.M, total, weighted)


def _geometric_envelope(y: list, first: int, r: Any) -> tuple[Any, Any, Any]:
    """Tail bounds for ``sum_{j>N} y_j`` and ``sum_{j>N} j y_j``.

    Assumes ``y_j <= C r^j`` beyond ``N`` with ``C`` measured as the largest
    ``y_j / r^j`` over the second half of the prefix, where the decay ratio
    has settled near ``r``.
    """
    N = first + len(y) - 1
    onset = first + len(y) // 2
    C = max(y[j - first] / r**j for j in range(onset, N + 1))
    head = C * r ** (N + 1)
    mass = head / (1 - r)
    weighted = head * ((N + 1) * (1 - r) + r) / (1 - r) ** 2
    return C, mass, weighted


def certify_star_optimality(
    inst: StarInstance, N: int, mode: ArithmeticMode = RATIONAL
) -> OptimalityCertificate:
    """Certify ``x_i = d(q^i - 1)/2`` and ``B = (M - m) d`` at depth ``N``.

    Checks, in order: (a) every row up to ``N`` is tight and equals
    ``(q^{n+m} - q)/(q - 1) d``; (b) the recursion duals are nonnegative with
    partial sum below 1; (c) the dual objective reaches ``M - m`` within the
    geometric tail envelope; (d) every column ``x_i`` cancels within the same
    envelope.  The mass tail is also available exactly as ``M y_{N+m}``.
    """
    m = inst.m
    if N < 2 * m:
        raise InputError(f"certificate needs N >= 2m = {2 * m}, got {N}")
    if not inst.d > 0:
        raise InputError("certificate needs a positive turn cost")
    tol = mode.tol
    d = mode.scalar(inst.d)
    q = mode.scalar(inst.q)
    M = mode.scalar(inst.M)
    r = mode.scalar(Fraction(m - 1, m))
    B = (M - m) * d
    reasons = []

    # (a) primal tightness on the generated rows
    lp = build_star_lp(inst, N)
    nv = N + m - 1
    x = [d * (q**i - 1) / 2 for i in range(1, nv + 1)]
    A = mode.array(lp.matrix)
    b = mode.array(lp.rhs)
    z = mode.array(x + [B])
    lhs_minus_b = A.dot(z) - b
    residuals = tuple(-v for v in lhs_minus_b)
    magnitude = np.abs(A).dot(np.abs(z)) + np.abs(b)
    closed = [(q ** (k + m) - q) / (q - 1) * d for k in range(1, N + 1)]
    lhs = [sum(x[: k + m - 1]) * 2 + (k + m - 1) * d for k in range(1, N + 1)]
    rhs = [B + 2 * M * x[k - 1] for k in range(1, N + 1)]
    rel = max(float(abs(v)) / max(1.0, float(s)) for v, s in zip(residuals, magnitude))
    bad = [
        j for j, (v, s) in enumerate(zip(residuals, magnitude), start=m - 1)
        if abs(v) > tol * max(1.0, float(s))
    ]
    if bad:
        reasons.append(f"constraints not tight: j={bad[:5]}")
    off = [
        k for k in range(N)
        if abs(lhs[k] - closed[k]) > tol * abs(float(closed[k]))
        or abs(rhs[k] - closed[k]) > tol * abs(float(closed[k]))
    ]
    if off:
        reasons.append(f"row value differs from (q^(n+m)-q)/(q-1) d at n={[k + 1 for k in off[:5]]}")

    # (b) dual sign and mass; roll 2m-1 extra terms for the exact tails
    y_ext = _roll_duals(m, M, N + 2 * m - 1)
    y = y_ext[: N - m + 2]
    first = m - 1
    if any(v < 0 for v in y):
        reasons.append("negative dual multiplier")
    partial = sum(y, M * 0)
    weighted = sum((j * v for j, v in enumerate(y, start=first)), M * 0)
    if not partial < 1 + tol:
        reasons.append(f"dual partial sum {partial} exceeds 1")

    # (c) dual objective against the tail envelope
    C, env_mass, env_weighted = _geometric_envelope(y, first, r)
    mass_gap = 1 - partial
    weight_gap = (M - m) - weighted
    if not (-tol <= mass_gap <= env_mass + tol):
        reasons.append(f"1 - sum y = {float(mass_gap):.3g} outside envelope {float(env_mass):.3g}")
    if not (-tol <= weight_gap <= env_weighted + tol):
        reasons.append(f"(M-m) - sum j y = {float(weight_gap):.3g} outside envelope {float(env_weighted):.3g}")
    # exact tails implied by the recursion: sum_{j>N} y_j = M y_{N+m},
    # sum_{j>N} j y_j = M (N y_{N+m} + M y_{N+2m-1})
    y_at = lambda j: y_ext[j - first]  # noqa: E731
    tail_mass = M * y_at(N + m)
    tail_weighted = M * (N * y_at(N + m) + M * y_at(N + 2 * m - 1))
    mass_exact = partial + tail_mass - 1
    weighted_exact = weighted + tail_weighted - (M - m)
    if abs(mass_exact) > tol or abs(weighted_exact) > tol * max(1.0, float(M)):
        reasons.append("recursion tails do not close the dual sums")

    # (d) column x_i: 2 sum_{j>=i} y_j - 2M y_{i+m-1}; the unseen tail lies in [0, env_mass]
    columns = []
    for i in range(1, N + 1):
        head = sum(y[max(i, first) - first :], M * 0)
        columns.append(2 * (head + tail_mass) - 2 * M * y_at(i + m - 1))
        truncated = 2 * head - 2 * M * y_at(i + m - 1)
        if not (-2 * env_mass - tol <= truncated <= tol):
            reasons.append(f"column x_{i} outside tail envelope")
            break
    if any(abs(v) > tol * max(1.0, float(M)) for v in columns):
        reasons.append("dual columns do not cancel with the recursion tail")

    dual_obj = d * (weighted + tail_weighted)
    if abs(B - dual_obj) > tol * max(1.0, abs(float(B))):
        reasons.append(f"primal {B} != dual {dual_obj}")
    verdict, why = judge(reasons)
    return OptimalityCertificate(
        constraint_residuals=residuals,
        dual_column_residuals=tuple(columns),
        dual_objective=dual_obj,
        primal_objective=B,
        verdict=verdict,
        reasons=why,
        mass_residual=mass_exact,
        max_relative_residual=rel,
        details={
            "duals": tuple(y),
            "first_index": first,
            "partial_sum": partial,
            "partial_weighted_sum": weighted,
            "envelope_constant": C,
            "mass_envelope": env_mass,
            "weighted_envelope": env_weighted,
            "tail_mass": tail_mass,
            "tail_weighted": tail_weighted,
            "row_values": tuple(closed),
        },
    )


def star_lambda(inst: StarInstance, n: int, mode: ArithmeticMode = FLOAT64) -> Any:
    """``B_n / d`` of the depth-``n`` relaxation."""
    sol = solve(build_star_lp(inst, n), mode)
    if not sol.optimal:
        raise InputError(f"star LP m={inst.m} n={n} is {sol.status.value}")
    return sol.objective / mode.scalar(inst.d)


@dataclass(frozen=True)
class StarLimitRow:
    m: int
    n: int
    lam: float
    extrapolated: float
    closed_form_limit: float


def star_limit_table(ms: Iterable[int], n: int, d: Any = 1) -> list[StarLimitRow]:
    """``B_n/d``, its Richardson extrapolation from ``n/2`` and the limit ``M - m``."""
    if n < 2 or n % 2:
        raise InputError(f"depth must be an even integer >= 2, got {n}")
    out = []
    for m in ms:
        inst = StarInstance(m, d)
        half = star_lambda(inst, n // 2)
        full = star_lambda(inst, n)
        limit = float(inst.M - m)
        out.append(StarLimitRow(m, n, full, extrapolate_limit({n // 2: half, n: full}), limit))
    return out
