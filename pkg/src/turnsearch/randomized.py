"""Optimal randomized competitive ratio for line search and its turn-cost bound.

The ratio is ``q = 1 + a`` where ``a`` solves ``a ln a = a + 1``.  Turn cost
only adds ``d (q - 1) / 2`` to the guarantee.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InputError

__all__ = ["RandomizedRatio", "randomized_additive_bound", "ratio_equation", "solve_randomized_ratio"]

_BRACKET = (math.e, 10.0)
_MIN_TOLERANCE = 1e-14


def ratio_equation(a: float) -> float:
    """``a ln a - (a + 1)``; strictly increasing for ``a > 1/e``."""
    return a * math.log(a) - (a + 1)


@dataclass(frozen=True)
class RandomizedRatio:
    a: float
    q: float
    residual: float

    def to_dict(self) -> dict:
        return {"a": self.a, "q": self.q, "residual": self.residual}


def solve_randomized_ratio(tolerance: float = 1e-9) -> RandomizedRatio:
    """Bisection on ``[e, 10]`` down to width 1e-14, then Newton polish.

    Returns ``a`` with ``|f(a)| <= tolerance * a``.  ``residual`` is
    ``|(a + 1)/ln a - a|``, the equation in its original quotient form.
    """
    if not tolerance >= _MIN_TOLERANCE:
        raise InputError(f"tolerance {tolerance} is below attainable float precision ({_MIN_TOLERANCE})")
    lo, hi = _BRACKET
    f_lo = ratio_equation(lo)
    if not (f_lo < 0 < ratio_equation(hi)):
        raise InputError("bracket does not straddle the root")
    while hi - lo > 1e-14:
        mid = 0.5 * (lo + hi)
        f_mid = ratio_equation(mid)
        if f_mid == 0:
            lo = hi = mid
            break
        if (f_mid < 0) == (f_lo < 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    a = 0.5 * (lo + hi)
    for _ in range(3):
        step = ratio_equation(a) / math.log(a)  # f'(a) = ln a
        candidate = a - step
        # damping: never leave the final bracket
        if not (lo - 1e-13 <= candidate <= hi + 1e-13):
            break
        a = candidate
        if abs(step) < 1e-16 * a:
            break
    if abs(ratio_equation(a)) > tolerance * a:
        raise InputError(f"could not reach |f(a)| <= {tolerance} * a")
    return RandomizedRatio(a=a, q=1.0 + a, residual=abs((a + 1) / math.log(a) - a))


def randomized_additive_bound(q: float, d: float) -> float:
    """Additive term ``d (q - 1) / 2`` from charging half a turn on each side of discovery."""
    if not q > 1:
        raise InputError(f"ratio q must exceed 1, got {q}")
    if d < 0:
        raise InputError(f"turn cost must be nonnegative, got {d}")
    return d * (q - 1) / 2
