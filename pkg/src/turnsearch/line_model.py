"""Line search with turn cost: LP family, closed-form optimum and certificate.

Variables of the depth-``n`` program are ``x_1 .. x_n`` followed by ``B``.
Row ``i`` charges a hider placed just beyond turning point ``i - 1``::

    2 x_1 + ... + 2 x_{i-2} + (3 - c) x_{i-1} + 2 x_i + i d <= B

and is stored as ``coeffs @ x - B <= -i d``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

from ._numeric import exact_or_float, in_mode
from .certificate import OptimalityCertificate, judge
from .errors import InputError
from .lp_core import FLOAT64, RATIONAL, ArithmeticMode, LinearProgram, LpSolution, solve
from .strategy import SearchStrategy

__all__ = [
    "DualSequence",
    "LineInstance",
    "LineSolution",
    "TradeoffPoint",
    "build_line_lp",
    "certify_line_optimality",
    "closed_form_line_strategy",
    "extrapolate_limit",
    "lambda_sequence",
    "line_dual_sequence",
    "solve_line",
    "tradeoff_curve",
]

TABLE1_SIZES = (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 20, 30, 40, 50, 100, 200, 400)


@dataclass(frozen=True)
class LineInstance:
    d: Any = 1
    c: Any = 9

    def __post_init__(self) -> None:
        if not self.d > 0:
            raise InputError(f"turn cost d must be positive, got {self.d}")
        if not self.c >= 9:
            raise InputError(f"competitive ratio c must be at least 9, got {self.c}")
        object.__setattr__(self, "d", exact_or_float(self.d))
        object.__setattr__(self, "c", exact_or_float(self.c))


def build_line_lp(inst: LineInstance, n: int) -> LinearProgram:
    if n < 1:
        raise InputError(f"depth n must be at least 1, got {n}")
    rows = []
    rhs = []
    for i in range(1, n + 1):
        row: list[Any] = [0] * (n + 1)
        for h in range(1, i - 1):
            row[h - 1] = 2
        if i >= 2:
            row[i - 2] = 3 - inst.c
        row[i - 1] = 2
        row[n] = -1
        rows.append(row)
        rhs.append(-i * inst.d)
    return LinearProgram(objective=[0] * n + [1], matrix=rows, rhs=rhs)


@dataclass(frozen=True)
class LineSolution:
    n: int
    lam: Any
    steps: tuple
    duals: tuple
    lp: LpSolution


def solve_line(inst: LineInstance, n: int, mode: ArithmeticMode = FLOAT64) -> LineSolution:
    """Solve the depth-``n`` relaxation; ``lam`` is ``B_n / d``."""
    lp = build_line_lp(inst, n)
    sol = solve(lp, mode)
    if not sol.optimal:
        raise InputError(f"line LP at depth {n} is {sol.status.value}")
    d = mode.scalar(inst.d)
    return LineSolution(n, sol.objective / d, tuple(sol.primal[:n]), tuple(sol.dual), sol)


def lambda_sequence(
    inst: LineInstance, sizes: Iterable[int], mode: ArithmeticMode = FLOAT64
) -> list[tuple[int, Any]]:
    return [(n, solve_line(inst, n, mode).lam) for n in sizes]


def extrapolate_limit(pairs: Mapping[int, Any] | Sequence[tuple[int, Any]]) -> Any:
    """Richardson step ``2 lam_{2n} - lam_n`` on the largest doubling pair.

    Doubling the depth roughly halves the remaining gap to the limit, so the
    error term cancels to first order.
    """
    table = dict(pairs)
    doubled = [n for n in table if 2 * n in table]
    if not doubled:
        raise InputError("need some n with both n and 2n present")
    n = max(doubled)
    return 2 * table[2 * n] - table[n]


def closed_form_line_strategy(d: Any, N: int) -> SearchStrategy:
    """Turning distances ``x_i = d (2^i - 1) / 2``; they make every row tight at ``B = 2d``."""
    if not d > 0:
        raise InputError(f"turn cost d must be positive, got {d}")
    if N < 1:
        raise InputError(f"N must be at least 1, got {N}")
    d = exact_or_float(d)
    return SearchStrategy(tuple(d * (2**i - 1) / 2 for i in range(1, N + 1)), d, 2)


@dataclass(frozen=True)
class DualSequence:
    """Prefix ``y_1 .. y_N`` plus the exact geometric tails beyond ``N``."""

    values: tuple
    tail_sum: Fraction
    tail_weighted_sum: Fraction

    @property
    def N(self) -> int:
        return len(self.values)

    @property
    def total_sum(self) -> Fraction:
        return sum(self.values, Fraction(0)) + self.tail_sum

    @property
    def total_weighted_sum(self) -> Fraction:
        return sum((j * y for j, y in enumerate(self.values, 1)), Fraction(0)) + self.tail_weighted_sum

    def value(self, j: int) -> Fraction:
        """``y_j`` for any ``j >= 1``, past the prefix via the closed form."""
        return Fraction(1, 2**j)

    def tail_from(self, i: int) -> Fraction:
        """``sum_{j >= i} y_j``."""
        return Fraction(1, 2 ** (i - 1))


def line_dual_sequence(N: int) -> DualSequence:
    if N < 1:
        raise InputError(f"N must be at least 1, got {N}")
    values = tuple(Fraction(1, 2**j) for j in range(1, N + 1))
    return DualSequence(values, Fraction(1, 2**N), Fraction(N + 2, 2**N))


def certify_line_optimality(
    d: Any, N: int, mode: ArithmeticMode = RATIONAL, c: Any = 9
) -> OptimalityCertificate:
    """Check ``x_i = d(2^i - 1)/2``, ``B = 2d`` against ``y_j = 2^-j`` at depth ``N``.

    Every row must be tight, every column ``x_i`` must cancel once the dual
    tail is added analytically, and ``d * sum j y_j`` must equal ``B``.
    """
    if N < 3:
        raise InputError(f"certificate needs N >= 3, got {N}")
    inst = LineInstance(d, c)
    lp = build_line_lp(inst, N)
    strategy = closed_form_line_strategy(d, N)
    dd = mode.scalar(d)
    B = 2 * dd
    z = mode.array(list(strategy.steps) + [B])
    A = mode.array(lp.matrix)
    b = mode.array(lp.rhs)
    lhs_minus_b = A.dot(z) - b
    residuals = tuple(-r for r in lhs_minus_b)
    # scale for float comparisons: magnitude of all terms in the row
    magnitude = np.abs(A).dot(np.abs(z)) + np.abs(b)

    duals = line_dual_sequence(N)
    coeff = mode.scalar(1 - inst.c)  # 2 from the running sum plus (3 - c)
    columns = tuple(
        2 * mode.scalar(duals.tail_from(i)) + coeff * mode.scalar(duals.value(i + 1))
        for i in range(1, N + 1)
    )
    mass = mode.scalar(duals.total_sum) - 1
    dual_obj = dd * mode.scalar(duals.total_weighted_sum)

    rel = max(float(abs(r)) / max(1.0, float(s)) for r, s in zip(residuals, magnitude))
    tol = mode.tol
    reasons = []
    bad_rows = [
        j + 1 for j, (r, s) in enumerate(zip(residuals, magnitude))
        if abs(r) > tol * max(1.0, float(s))
    ]
    if bad_rows:
        reasons.append(f"constraints not tight: rows {bad_rows[:5]}")
    bad_cols = [i + 1 for i, r in enumerate(columns) if abs(r) > tol]
    if bad_cols:
        reasons.append(f"dual columns do not cancel: x_{bad_cols[:5]}")
    if abs(mass) > tol:
        reasons.append(f"dual mass differs from 1 by {mass}")
    if abs(B - dual_obj) > tol * max(1.0, abs(float(B))):
        reasons.append(f"primal {B} != dual {dual_obj}")
    verdict, why = judge(reasons)
    return OptimalityCertificate(
        constraint_residuals=residuals,
        dual_column_residuals=columns,
        dual_objective=dual_obj,
        primal_objective=B,
        verdict=verdict,
        reasons=why,
        mass_residual=mass,
        max_relative_residual=rel,
        details={"duals": duals.values, "strategy": strategy},
    )


@dataclass(frozen=True)
class TradeoffPoint:
    c: Any
    n: int
    lower_bound: float
    extrapolated: float


def tradeoff_curve(d: Any, c_values: Iterable[Any], n: int, mode: ArithmeticMode = FLOAT64) -> list[TradeoffPoint]:
    """``B/d`` at depth ``n`` and Richardson-extrapolated from ``(n/2, n)`` per ``c``."""
    if n < 2 or n % 2:
        raise InputError(f"tradeoff depth must be an even integer >= 2, got {n}")
    out = []
    for c in c_values:
        inst = LineInstance(d, c)
        half = solve_line(inst, n // 2, mode).lam
        full = solve_line(inst, n, mode).lam
        out.append(TradeoffPoint(inst.c, n, full, extrapolate_limit({n // 2: half, n: full})))
    return out
