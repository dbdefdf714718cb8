"""Real intervals with optional open or infinite endpoints."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Interval:
    """A nondegenerate interval of the real line.

    Infinite endpoints are always treated as open, whatever the flag says.
    """

    lo: float = -math.inf
    hi: float = math.inf
    lo_open: bool = True
    hi_open: bool = True

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"degenerate interval: lo={self.lo!r}, hi={self.hi!r}")

    @classmethod
    def real_line(cls) -> "Interval":
        return cls()

    @classmethod
    def positive(cls) -> "Interval":
        return cls(0.0, math.inf, True, True)

    @classmethod
    def closed(cls, lo: float, hi: float) -> "Interval":
        return cls(lo, hi, False, False)

    @property
    def is_bounded(self) -> bool:
        return math.isfinite(self.lo) and math.isfinite(self.hi)

    def contains(self, x) -> bool:
        """True when every value in ``x`` (scalar or array) lies in the interval."""
        return bool(np.all(self.mask(x)))

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def mask(self, x):
        x = np.asarray(x, dtype=float)
        if self.lo_open or math.isinf(self.lo):
            above = x > self.lo
        else:
            above = x >= self.lo
        if self.hi_open or math.isinf(self.hi):
            below = x < self.hi
        else:
            below = x <= self.hi
        return above & below & np.isfinite(x)

    def interior_contains(self, x: float) -> bool:
        return self.lo < x < self.hi

    def finite_window(self, half_width: float = 10.0, inset: float = 1e-3) -> tuple[float, float]:
        """A closed finite sub-interval, used to build test grids.

        Unbounded sides are cut ``half_width`` away from the finite side (or
        from zero); every endpoint is pulled ``inset`` inwards so the window
        avoids the boundary.
        """
        lo, hi = self.lo, self.hi
        if math.isinf(lo) and math.isinf(hi):
            lo, hi = -half_width, half_width
        elif math.isinf(lo):
            lo = hi - 2 * half_width
        elif math.isinf(hi):
            hi = lo + 2 * half_width
        pad = inset * (hi - lo)
        return lo + pad, hi - pad

    def intersect(self, other: "Interval") -> "Interval":
        if self.lo > other.lo:
            lo, lo_open = self.lo, self.lo_open
        elif self.lo < other.lo:
            lo, lo_open = other.lo, other.lo_open
        else:
            lo, lo_open = self.lo, self.lo_open or other.lo_open
        if self.hi < other.hi:
            hi, hi_open = self.hi, self.hi_open
        elif self.hi > other.hi:
            hi, hi_open = other.hi, other.hi_open
        else:
            hi, hi_open = self.hi, self.hi_open or other.hi_open
        return Interval(lo, hi, lo_open, hi_open)

    def __str__(self) -> str:
        left = "(" if self.lo_open or math.isinf(self.lo) else "["
        right = ")" if self.hi_open or math.isinf(self.hi) else "]"
        return f"{left}{self.lo}, {self.hi}{right}"


def chebyshev_grid(lo: float, hi: float, n: int = 64) -> np.ndarray:
    """Chebyshev points of the first kind on [lo, hi], increasing."""
    k = np.arange(n)
    nodes = np.cos((2 * k + 1) * np.pi / (2 * n))[::-1]
    return 0.5 * (lo + hi) + 0.5 * (hi - lo) * nodes
