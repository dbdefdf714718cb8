"""Exponential decay rate of ``P(M_n >= x)`` and the Cramer rate function.

Because ``M_n >= x`` exactly when ``sum_i D(X_i, x) >= 0``, the rate is that
of an i.i.d. sum: ``(1/n) ln P(M_n >= x) -> inf_{c>0} ln E exp(c D(X, x))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import logsumexp

from ..core.deviations import Deviation
from ..core.roots import golden_section_min
from ..errors import (
    Divergent,
    FlatObjective,
    NotBeyondMean,
    OutOfRange,
    QuadratureBudgetExceeded,
    SamplerOnlyUnsupported,
)
from ..population.distributions import DENSITY, DISCRETE, DistributionSpec
from ..population.expectations import expect_deviation
from ..population.quadrature import DEFAULT, QuadratureConfig, expect, integrate_log_density

_C_START = 1e-6
_MAX_DOUBLINGS = 60
_TAIL_FIRST = 192  # 2**192 is about 6e57
_TAIL_RUN = 8


@dataclass(frozen=True)
class LDResult:
    x: float
    inf_phi: float
    c_star: float
    gamma: float
    bracket: tuple[float, float]
    mean_deviation: float


def _reference_points(dist: DistributionSpec) -> list[float]:
    pts = []
    if dist.ppf is not None:
        pts += [dist.ppf(q) for q in (1e-3, 0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 1 - 1e-3)]
    lo, hi = dist.support.finite_window(half_width=5.0, inset=0.0)
    # include closed endpoints, where the exponent of a tilted bounded law peaks
    pts += list(np.linspace(lo, hi, 65))
    return [x for x in pts if dist.support.contains(x)]


def _tail_diverges(h: Callable[[float], float], dist: DistributionSpec, c: float) -> bool:
    """Whether ``E exp(c h(X))`` is infinite because of growth in an unbounded tail.

    Quadrature never looks past the ``1e-14`` quantile, so an integrand that
    only turns upward further out (``exp(c X^2)`` against an exponential
    density, say, for small ``c``) would be missed. With the analytic
    log-density the log-mass of geometrically growing shells is followed out
    to about ``1e60``; if it is still non-decreasing there, the integral
    diverges. Laws without ``logpdf`` are not checked.
    """
    if dist.logpdf is None:
        return False
    for side in (1.0, -1.0):
        edge = dist.support.hi if side > 0 else dist.support.lo
        if math.isfinite(edge):
            continue
        if dist.ppf is not None:
            x0 = dist.ppf(1 - 1e-14) if side > 0 else dist.ppf(1e-14)
        else:
            x0 = dist.center
        scale = max(1.0, abs(x0))
        prev = None
        rising = 0
        for j in range(_TAIL_FIRST, _TAIL_FIRST + _TAIL_RUN):
            width = scale * 2.0**j
            try:
                e = c * float(h(x0 + side * width)) + dist.logpdf(x0 + side * width) + math.log(width)
            except OverflowError:
                return True
            if math.isnan(e):
                return False
            if e == math.inf:
                return True
            if prev is not None and e >= prev - 1e-9 * max(1.0, abs(prev)):
                rising += 1
            prev = e
        if rising == _TAIL_RUN - 1:
            return True
    return False


def log_mgf(h: Callable[[float], float], dist: DistributionSpec, c: float, cfg: QuadratureConfig = DEFAULT, points=()) -> float:
    """``ln E exp(c h(X))``; ``+inf`` when the expectation is infinite.

    Discrete laws are summed exactly in log space. For densities the
    far-tail check of :func:`_tail_diverges` runs first; then
    ``exp(c h(x) - s) pdf(x)`` is integrated in log form with the shift
    ``s = c max h`` over a grid of quantiles, and ``s`` is added back.
    A combined exponent above 700 counts as overflow, i.e. an infinite mean.
    """
    if c == 0.0:
        return 0.0
    if dist.kind == DISCRETE:
        e = c * np.array([float(h(v)) for v in dist.atoms])
        if np.any(np.isnan(e)):
            return math.inf
        return float(logsumexp(e, b=np.asarray(dist.probs)))
    if dist.kind != DENSITY:
        raise SamplerOnlyUnsupported(f"{dist.name} only supports sampling")
    if _tail_diverges(h, dist, c):
        return math.inf
    refs = [c * float(h(x)) for x in _reference_points(dist)]
    refs = [r for r in refs if math.isfinite(r)]
    shift = max(refs) if refs else 0.0

    try:
        val, _ = integrate_log_density(lambda x: c * float(h(x)) - shift, dist, cfg, points)
    except (Divergent, QuadratureBudgetExceeded):
        return math.inf
    if not math.isfinite(val) or val < 0:
        return math.inf
    if val == 0.0:
        return -math.inf
    return shift + math.log(val)


def log_phi(D: Deviation, dist: DistributionSpec, c: float, x: float, cfg: QuadratureConfig = DEFAULT) -> float:
    """``ln E exp(c D(X, x))``."""
    return log_mgf(lambda v: D.eval(v, x), dist, c, cfg, points=(x, *D.x_breaks))


def mgf_phi(D: Deviation, dist: DistributionSpec, c: float, x: float, cfg: QuadratureConfig = DEFAULT) -> float:
    """``E exp(c D(X, x))`` for ``c > 0``.

    Raises:
        Divergent: the expectation is infinite.
    """
    if not c > 0:
        raise ValueError("c must be positive")
    v = log_phi(D, dist, c, x, cfg)
    if math.isinf(v):
        raise Divergent(f"E exp({c} D(X, {x})) is infinite")
    return math.exp(v)


def _minimise_convex(h: Callable[[float], float]) -> tuple[float, float, tuple[float, float]]:
    """Minimise a convex ``h`` on ``[0, inf)`` with ``h(0) = 0`` and negative slope at ``0+``.

    Returns ``(c_star, h(c_star), bracket)``.
    """
    if math.isinf(h(_C_START)):
        raise Divergent("the moment generating function is infinite for every probed c > 0")
    hi = 1.0
    h_hi = h(hi)
    h_half = h(0.5 * hi)
    for _ in range(_MAX_DOUBLINGS):
        if h_hi == math.inf or (h_hi >= h_half and h_hi > -math.inf):
            break
        hi *= 2.0
        h_half, h_hi = h_hi, h(hi)
    else:
        raise FlatObjective("ln E exp(c D) keeps decreasing as c grows; the infimum sits at c -> infinity")

    def hh(c):
        return 0.0 if c == 0.0 else h(c)

    c_star, val = golden_section_min(hh, 0.0, hi, tol=1e-10)
    # h -> 0 as c -> 0+, so the infimum is never above 0; a positive value is quadrature noise
    return c_star, min(val, 0.0), (0.0, hi)


def ld_rate(
    D: Deviation,
    dist: DistributionSpec,
    x: float,
    cfg: QuadratureConfig = DEFAULT,
    esssup_positive: bool | None = None,
) -> LDResult:
    """``inf_{c>0} E exp(c D(X, x))`` together with its minimiser and ``gamma = -ln inf``.

    For discrete laws the essential supremum of ``D(X, x)`` is computed
    exactly. For densities it cannot be estimated robustly and is taken from
    ``esssup_positive``, which the caller asserts (default: positive); a
    non-positive supremum still shows up as :class:`FlatObjective` once the
    doubling search runs off to infinity.

    Raises:
        NotBeyondMean: ``E D(X, x) >= 0``, i.e. ``x`` is not above the mean.
        FlatObjective: ``esssup D(X, x) <= 0``.
        Divergent: the moment generating function is infinite for all probed ``c``.
    """
    mean_dev = expect_deviation(D, dist, x, cfg)
    if not mean_dev < 0:
        raise NotBeyondMean(f"E D(X, {x}) = {mean_dev:.6g} is not negative; x is not beyond the deviation mean")
    if dist.kind == DISCRETE:
        esssup_positive = max(float(D.eval(v, x)) for v in dist.atoms) > 0
    if esssup_positive is False:
        raise FlatObjective(f"esssup D(X, {x}) <= 0; P(M_n >= x) vanishes")
    c_star, val, bracket = _minimise_convex(lambda c: log_phi(D, dist, c, x, cfg))
    return LDResult(float(x), math.exp(val), float(c_star), -val, bracket, mean_dev)


def cramer_gamma(dist: DistributionSpec, y: float, cfg: QuadratureConfig = DEFAULT) -> float:
    """Cramer rate ``sup_{c>0} (c y - ln E exp(c X))`` for ``E X < y < esssup X``.

    Computed as ``-inf_c ln E exp(c (X - y))`` so nothing overflows for large ``y``.

    Raises:
        OutOfRange: ``y`` is not strictly between the mean and the essential supremum.
    """
    mean = expect(lambda v: v, dist, cfg)
    if not (mean < y < dist.esssup):
        raise OutOfRange(f"y={y} outside (E X, esssup X) = ({mean}, {dist.esssup})")
    _, val, _ = _minimise_convex(lambda c: log_mgf(lambda v: v - y, dist, c, cfg, points=(y,)))
    return -val
