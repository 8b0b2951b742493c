"""Cyclic search strategies: step ``i`` (1-based) explores ray ``(i - 1) % m``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable

from ._numeric import exact_or_float
from .errors import InputError


@dataclass(frozen=True)
class SearchStrategy:
    """A finite prefix ``x_1 .. x_N`` of turning distances on ``m`` rays."""

    steps: tuple
    d: Any
    m: int = 2

    def __post_init__(self) -> None:
        steps = tuple(exact_or_float(s) for s in self.steps)
        if self.m < 2:
            raise InputError(f"a search needs at least 2 rays, got m={self.m}")
        if self.d < 0:
            raise InputError(f"turn cost must be nonnegative, got d={self.d}")
        if any(s < 0 for s in steps):
            raise InputError("step lengths must be nonnegative")
        object.__setattr__(self, "steps", steps)
        object.__setattr__(self, "d", exact_or_float(self.d))

    def __len__(self) -> int:
        return len(self.steps)

    def step(self, i: int) -> Any:
        """1-based access, matching the usual ``x_i`` indexing."""
        return self.steps[i - 1]

    def ray_of(self, i: int) -> int:
        return (i - 1) % self.m

    @property
    def strictly_increasing(self) -> bool:
        return all(0 < a < b for a, b in zip(self.steps, self.steps[1:])) and (
            not self.steps or self.steps[0] > 0
        )

    def reach(self) -> list:
        """Farthest distance explored on each ray within the prefix."""
        out = [0] * self.m
        for i, x in enumerate(self.steps, start=1):
            r = self.ray_of(i)
            out[r] = max(out[r], x)
        return out

    def scaled(self, factor: Any) -> SearchStrategy:
        return SearchStrategy(tuple(s * factor for s in self.steps), self.d * factor, self.m)

    @classmethod
    def from_lines(cls, lines: Iterable[str], d: Any, m: int = 2) -> SearchStrategy:
        """Parse one decimal step length per line; ``#`` starts a comment line."""
        steps = []
        for lineno, raw in enumerate(lines, start=1):
            text = raw.strip()
            if not text or text.startswith("#"):
                continue
            try:
                steps.append(Fraction(text))
            except ValueError:
                raise InputError(f"line {lineno}: not a decimal number: {text!r}") from None
        if not steps:
            raise InputError("strategy file contains no steps")
        return cls(tuple(steps), d, m)

    @classmethod
    def from_file(cls, path: str | Path, d: Any, m: int = 2) -> SearchStrategy:
        with open(path, encoding="utf-8") as fh:
            return cls.from_lines(fh, d, m)
