"""Small numeric helpers: exact/float coercion and fixed-point formatting."""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Any

from .lp_core import ArithmeticMode


def exact_or_float(value: Any) -> Fraction | float:
    """Integers and fractions stay exact; everything else becomes a float."""
    if isinstance(value, Rational):
        return Fraction(value)
    return float(value)


def in_mode(value: Any, mode: ArithmeticMode | None) -> Fraction | float:
    if mode is None:
        return exact_or_float(value)
    return mode.scalar(value)


def truncate(value: Any, places: int = 4) -> float:
    """Truncate toward zero to ``places`` decimals.

    The scaled value is first rounded at 1e-6 of the last kept digit, so a
    float that misses an exact decimal by rounding noise (0.24999999999999997)
    is not pushed down a whole unit.
    """
    scale = 10**places
    scaled = round(float(value) * scale, 6)
    cut = math.floor(scaled) if scaled >= 0 else math.ceil(scaled)
    return cut / scale + 0.0


def fmt_truncated(value: Any, places: int = 4) -> str:
    return f"{truncate(value, places):.{places}f}"


def fmt_fixed(value: Any, places: int = 6) -> str:
    out = f"{float(value):.{places}f}"
    return "0." + "0" * places if out == "-0." + "0" * places else out


def fraction_str(value: Any) -> str:
    v = Fraction(value)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
