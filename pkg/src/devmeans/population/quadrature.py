"""Expectations under discrete and density laws."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np
from scipy import integrate

from ..errors import Divergent, QuadratureBudgetExceeded, SamplerOnlyUnsupported
from .distributions import DENSITY, DISCRETE, DistributionSpec


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_subdivisions: int = 2000
    tail_cut: float = 1e-14

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("quadrature tolerances must be positive")
        if self.max_subdivisions < 8:
            raise ValueError("max_subdivisions must be at least 8")


DEFAULT = QuadratureConfig()
EXP_LIMIT = 700.0


class _Overflow(Exception):
    pass


def _pieces(dist: DistributionSpec, points: Iterable[float]) -> list[tuple[float, float]]:
    lo, hi = dist.support.lo, dist.support.hi
    cuts = set(dist.breakpoints)
    cuts.update(float(p) for p in points if p is not None and math.isfinite(p))
    if dist.ppf is not None and not dist.support.is_bounded:
        # anchor the bulk so the infinite-range transform does not miss it
        cuts.update(dist.ppf(q) for q in (0.01, 0.5, 0.99))
    inner = sorted(c for c in cuts if lo < c < hi)
    edges = [lo, *inner, hi]
    return list(zip(edges[:-1], edges[1:]))


def integrate_density(
    g: Callable[[float], float],
    dist: DistributionSpec,
    cfg: QuadratureConfig = DEFAULT,
    points: Iterable[float] = (),
    lo: float | None = None,
    hi: float | None = None,
) -> tuple[float, float]:
    """``int g(x) pdf(x) dx`` over the support (or ``[lo, hi]`` inside it).

    The support is split at the law's breakpoints and at ``points``; infinite
    pieces go through QUADPACK's ``x = a + (1 - s)/s`` transform. Returns the
    value and an error bound.

    Raises:
        Divergent: the integrand produced non-finite values or the integral
            grew without bound.
        QuadratureBudgetExceeded: subdivision budget exhausted short of the
            requested tolerance.
    """
    pdf = dist.pdf

    def integrand(x):
        w = pdf(x)
        if w == 0.0:
            return 0.0
        return float(g(x)) * w

    return _integrate(integrand, dist, cfg, points, lo, hi)


def integrate_log_density(
    log_g: Callable[[float], float],
    dist: DistributionSpec,
    cfg: QuadratureConfig = DEFAULT,
    points: Iterable[float] = (),
) -> tuple[float, float]:
    """``int exp(log_g(x) + log pdf(x)) dx``, for integrands whose factors over- and underflow separately.

    Uses the law's ``logpdf`` when it has one.

    Raises:
        Divergent: the combined exponent exceeds ``EXP_LIMIT`` somewhere, or
            as for :func:`integrate_density`.
        QuadratureBudgetExceeded: as for :func:`integrate_density`.
    """
    logpdf = dist.logpdf
    if logpdf is None:
        pdf = dist.pdf

        def logpdf(x):
            w = pdf(x)
            return math.log(w) if w > 0 else -math.inf

    def integrand(x):
        lw = logpdf(x)
        if lw == -math.inf:
            return 0.0
        e = float(log_g(x)) + lw
        if not e <= EXP_LIMIT:
            raise _Overflow
        return math.exp(e)

    try:
        return _integrate(integrand, dist, cfg, points, None, None)
    except _Overflow:
        raise Divergent(f"integrand exceeds exp({EXP_LIMIT:g})") from None


def _integrate(integrand, dist, cfg, points, lo, hi):
    pieces = _pieces(dist, points)
    if lo is not None or hi is not None:
        a0 = dist.support.lo if lo is None else max(lo, dist.support.lo)
        b0 = dist.support.hi if hi is None else min(hi, dist.support.hi)
        pieces = [(max(a, a0), min(b, b0)) for a, b in pieces if b > a0 and a < b0]
    total, err_total = [], 0.0
    for a, b in pieces:
        with warnings.catch_warnings(), np.errstate(all="ignore"):
            warnings.simplefilter("ignore")
            out = integrate.quad(
                integrand, a, b, epsabs=cfg.abs_tol, epsrel=cfg.rel_tol, limit=cfg.max_subdivisions, full_output=1
            )
        val, err = out[0], out[1]
        ier = 0 if len(out) == 3 else 1
        if not (math.isfinite(val) and math.isfinite(err)):
            raise Divergent(f"integral over [{a}, {b}] is not finite")
        if ier and err > 1e3 * max(cfg.abs_tol, cfg.rel_tol * abs(val)):
            if abs(val) > 1e100:
                raise Divergent(f"integral over [{a}, {b}] appears infinite")
            raise QuadratureBudgetExceeded(f"quadrature over [{a}, {b}] missed tolerance: {out[3]}", val, err)
        total.append(val)
        err_total += err
    return math.fsum(total), err_total


def expect(f: Callable[[float], float], dist: DistributionSpec, cfg: QuadratureConfig = DEFAULT, points: Iterable[float] = ()) -> float:
    """``E f(X)``: a weighted sum for discrete laws, adaptive quadrature for densities.

    ``points`` lists abscissae where ``f`` is not smooth.

    Raises:
        SamplerOnlyUnsupported: the law has no pmf or pdf.
        Divergent, QuadratureBudgetExceeded: see :func:`integrate_density`.
    """
    if dist.kind == DISCRETE:
        with np.errstate(all="ignore"):
            vals = [p * float(f(v)) for v, p in zip(dist.atoms, dist.probs)]
        if not all(math.isfinite(v) for v in vals):
            raise Divergent("expectation has a non-finite term")
        return math.fsum(vals)
    if dist.kind == DENSITY:
        return integrate_density(f, dist, cfg, points)[0]
    raise SamplerOnlyUnsupported(f"{dist.name} only supports sampling")
