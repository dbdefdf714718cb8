"""Asymptotic variance and iterated-logarithm constant of deviation means.

With ``t0`` the population deviation mean,
``m2 = E D(X, t0)^2`` and ``d1 = E[-d/dt D(X, t0)]``, the sample deviation
mean satisfies ``sqrt(n) (M_n - t0) -> N(0, m2 / d1^2)`` and its scaled
fluctuations ``(M_n - t0) / sqrt(2 ln ln n / n)`` have limsup ``sqrt(m2) / d1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..core.deviations import Deviation
from ..core.generators import Generator, Weight
from ..errors import BoundaryStep, DegenerateDistribution, NonpositiveSlope, ZeroDerivative
from ..population.distributions import DistributionSpec
from ..population.expectations import _checked_expect, bajraktarevic_expected_value, population_mean
from ..population.quadrature import DEFAULT, QuadratureConfig, expect


@dataclass(frozen=True)
class AsymptoticConstants:
    t0: float
    m2: float
    d1: float
    sigma2: float
    lil_c: float

    @classmethod
    def from_moments(cls, t0: float, m2: float, d1: float) -> "AsymptoticConstants":
        sigma2 = m2 / (d1 * d1)
        return cls(t0, m2, d1, sigma2, math.sqrt(sigma2))


def d2_deviation(D: Deviation, x, t: float):
    """``d/dt D(x, t)``: analytic when the deviation carries it, else a central difference.

    The step is ``1e-6 (1 + |t|)``; next to a domain boundary a one-sided
    difference is used instead.
    """
    if D.d2 is not None:
        return D.d2(x, t)
    h = 1e-6 * (1.0 + abs(t))
    left, right = D.domain.contains(t - h), D.domain.contains(t + h)
    if left and right:
        return (D.eval(x, t + h) - D.eval(x, t - h)) / (2.0 * h)
    if right and D.domain.contains(t + 2 * h):
        return (-3.0 * D.eval(x, t) + 4.0 * D.eval(x, t + h) - D.eval(x, t + 2 * h)) / (2.0 * h)
    if left and D.domain.contains(t - 2 * h):
        return (3.0 * D.eval(x, t) - 4.0 * D.eval(x, t - h) + D.eval(x, t - 2 * h)) / (2.0 * h)
    raise BoundaryStep(f"no difference stencil around t={t} fits in {D.domain}")


def asymptotic_constants(D: Deviation, dist: DistributionSpec, cfg: QuadratureConfig = DEFAULT) -> AsymptoticConstants:
    """``t0``, ``m2``, ``d1`` and the derived CLT variance and LIL constant.

    Raises:
        DegenerateDistribution: the law is a point mass, or ``m2`` vanishes.
        NonpositiveSlope: ``d1 <= 0``.
        NoRootInDomain, Divergent: propagated from :func:`population_mean`.
    """
    if dist.is_degenerate:
        raise DegenerateDistribution(f"{dist!r} is a point mass; the limit law is degenerate")
    pm = population_mean(D, dist, cfg=cfg)
    t0 = pm.t0
    points = (t0, *D.x_breaks)
    m2 = expect(lambda x: float(D.eval(x, t0)) ** 2, dist, cfg, points)
    d1 = expect(lambda x: -float(d2_deviation(D, x, t0)), dist, cfg, points)
    if not m2 > 1e-14 * (1.0 + t0 * t0):
        raise DegenerateDistribution(f"E D(X, t0)^2 = {m2:.3g} vanishes")
    if not d1 > 0:
        raise NonpositiveSlope(f"E[-d2 D(X, t0)] = {d1:.3g} is not positive")
    return AsymptoticConstants.from_moments(t0, m2, d1)


def bajraktarevic_sigma2(f: Generator, p: Weight, dist: DistributionSpec, cfg: QuadratureConfig = DEFAULT) -> float:
    """Limit variance of Bajraktarevic means from five moments of ``p(X)`` and ``p(X) f(X)``.

    ``(E p)^-4 / f'(B)^2 * [(E p)^2 Var(pf) + (E pf)^2 Var(p) - 2 E p E pf Cov(p, pf)]``
    with ``B = f^-1(E pf / E p)``.

    Raises:
        Divergent: a needed moment is infinite.
        ZeroDerivative: ``f'(B) = 0`` or ``f`` has no derivative.
    """
    if f.derivative is None:
        raise ZeroDerivative(f"generator {f.name} carries no derivative")
    ep = _checked_expect(lambda x: p(x), dist, cfg, "p(X)")
    epf = _checked_expect(lambda x: p(x) * f(x), dist, cfg, "p(X) f(X)")
    ep2 = _checked_expect(lambda x: p(x) ** 2, dist, cfg, "p(X)^2")
    epf2 = _checked_expect(lambda x: (p(x) * f(x)) ** 2, dist, cfg, "(p(X) f(X))^2")
    ep2f = expect(lambda x: p(x) ** 2 * f(x), dist, cfg)
    var_p = ep2 - ep * ep
    var_pf = epf2 - epf * epf
    cov = ep2f - ep * epf
    b = bajraktarevic_expected_value(f, p, dist, cfg)
    fp = float(f.derivative(b))
    if fp == 0.0 or not math.isfinite(fp):
        raise ZeroDerivative(f"f'({b}) = {fp}")
    bracket = ep * ep * var_pf + epf * epf * var_p - 2.0 * ep * epf * cov
    return bracket / (ep**4 * fp * fp)
