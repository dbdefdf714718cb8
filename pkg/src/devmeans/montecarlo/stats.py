"""Goodness-of-fit and interval helpers for the experiments."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from ..errors import EmptyInput


def ks_statistic(values, cdf: Callable) -> float:
    """One-sample Kolmogorov-Smirnov distance ``sup |F_n - F|``.

    Uses ``max_i max(i/n - F(v_(i)), F(v_(i)) - (i-1)/n)`` over the sorted values.

    Raises:
        EmptyInput: ``values`` is empty.
    """
    v = np.sort(np.asarray(values, dtype=float).ravel())
    n = v.size
    if n == 0:
        raise EmptyInput("KS statistic of an empty sample")
    F = np.asarray(cdf(v), dtype=float)
    i = np.arange(1, n + 1)
    d = max(float(np.max(i / n - F)), float(np.max(F - (i - 1) / n)))
    return min(max(d, 0.0), 1.0)


def wilson_interval(successes: int, trials: int, z: float = 1.959963984540054) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion (95% by default)."""
    if trials <= 0:
        raise ValueError("trials must be positive")
    p = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    centre = (p + z2 / (2 * trials)) / denom
    half = z / denom * math.sqrt(p * (1 - p) / trials + z2 / (4 * trials * trials))
    # at k = 0 or k = n one bound is exactly 0 or 1; the formula only gets there up to rounding
    lo = 0.0 if successes == 0 else max(0.0, centre - half)
    hi = 1.0 if successes == trials else min(1.0, centre + half)
    return lo, hi
