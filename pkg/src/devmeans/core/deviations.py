"""Deviation functions and the finite-sample deviation mean.

A deviation ``D(x, t)`` on an interval ``I`` vanishes on the diagonal and is
continuous and strictly decreasing in ``t``. The deviation mean of a sample is
the unique ``t`` where ``sum_i D(x_i, t)`` changes sign; it always sits between
the sample minimum and maximum, which gives the root solver a free bracket.

Every ``eval`` callable must broadcast over numpy arrays in both arguments.
Callables are shared freely between threads, so they must not keep state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from ..errors import DomainViolation, EmptySample, GridOutsideDomain
from .generators import Generator, Weight, weight_one
from .interval import Interval, chebyshev_grid
from .roots import ABS_TOL, MAX_ITER, REL_TOL, RootResult, find_root_decreasing


@dataclass(frozen=True)
class Deviation:
    """A deviation on ``domain``.

    Attributes:
        domain: the interval ``I``.
        eval: ``(x, t) -> D(x, t)``, broadcasting over arrays.
        d2: optional analytic partial derivative in ``t``.
        name: label used in reports.
        x_breaks: abscissae (besides ``x = t``) where ``D(., t)`` is not
            smooth; quadrature splits there.
    """

    domain: Interval
    eval: Callable
    d2: Callable | None = None
    name: str = "deviation"
    x_breaks: tuple[float, ...] = field(default=())

    def __call__(self, x, t):
        return self.eval(x, t)


@dataclass(frozen=True)
class AxiomReport:
    diagonal_max_abs: float
    monotone_violations: int
    n_x: int
    n_t: int
    tol: float

    @property
    def passed(self) -> bool:
        return self.diagonal_max_abs <= self.tol and self.monotone_violations == 0


# -- presets -----------------------------------------------------------------


def linear(domain: Interval | None = None) -> Deviation:
    """``D(x, t) = x - t``, the deviation of the arithmetic mean."""
    return Deviation(
        domain or Interval(),
        eval=lambda x, t: np.subtract(x, t)[()],
        d2=lambda x, t: -np.ones(np.broadcast(np.asarray(x), np.asarray(t)).shape)[()],
        name="linear",
    )


def power(p: float) -> Deviation:
    """Signed power ``sign(x - t) |x - t|**p`` on the real line."""
    if not p > 0:
        raise ValueError("power deviation needs p > 0")

    def ev(x, t):
        u = np.subtract(x, t)
        return (np.sign(u) * np.abs(u) ** p)[()]

    def d2(x, t):
        u = np.abs(np.subtract(x, t))
        with np.errstate(divide="ignore"):
            return (-p * u ** (p - 1.0))[()]

    return Deviation(Interval(), ev, d2, name=f"power({p:g})")


def quadratic_example() -> Deviation:
    """``x (x - t) + x**2 - t**2`` on ``(0, inf)``; not a Bajraktarevic deviation."""
    return Deviation(
        Interval.positive(),
        eval=lambda x, t: (np.multiply(x, np.subtract(x, t)) + np.square(x) - np.square(t))[()],
        d2=lambda x, t: (-np.asarray(x, dtype=float) - 2.0 * np.asarray(t, dtype=float))[()],
        name="quadratic-example",
    )


def exponential_kink() -> Deviation:
    """Piecewise exponential deviation on ``[-2, inf)``.

    ``exp(x t) - exp(x**2)`` for ``x < 0``, ``-t`` at ``x = 0`` and
    ``exp(-x t) - exp(-x**2)`` for ``x > 0``. Under a lognormal law its
    integrability interval is ``[0, inf)`` rather than the whole domain.
    """

    def ev(x, t):
        x, t = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
        with np.errstate(over="ignore", invalid="ignore"):
            neg = np.exp(x * t) - np.exp(x * x)
            pos = np.exp(-x * t) - np.exp(-x * x)
        return np.where(x < 0, neg, np.where(x > 0, pos, -t))[()]

    def d2(x, t):
        x, t = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
        with np.errstate(over="ignore", invalid="ignore"):
            neg = x * np.exp(x * t)
            pos = -x * np.exp(-x * t)
        return np.where(x < 0, neg, np.where(x > 0, pos, -1.0))[()]

    return Deviation(Interval(-2.0, math.inf, False, True), ev, d2, name="exp-kink", x_breaks=(0.0,))


def make_bajraktarevic_deviation(f: Generator, p: Weight | None = None) -> Deviation:
    """``D(x, t) = p(x) (f(x) - f(t))``.

    For a decreasing generator the sign is flipped so that ``D`` stays
    decreasing in ``t``; the mean it generates is unchanged.
    """
    p = p or weight_one()
    s = 1.0 if f.increasing else -1.0

    def ev(x, t):
        return (s * p(x) * (f(x) - f(t)))[()]

    d2 = None
    if f.derivative is not None:
        fp = f.derivative

        def d2(x, t):
            return (-s * p(x) * fp(t))[()]

    domain = f.domain.intersect(p.domain)
    return Deviation(domain, ev, d2, name=f"bajraktarevic({f.name},{p.name})")


def quasi_arithmetic_deviation(f: Generator) -> Deviation:
    return make_bajraktarevic_deviation(f, weight_one())


def scaled(D: Deviation, d: Callable, d_prime: Callable | None = None) -> Deviation:
    """``d(t) D(x, t)`` for a positive continuous ``d``; generates the same means."""

    def ev(x, t):
        return (d(t) * D.eval(x, t))[()]

    d2 = None
    if D.d2 is not None and d_prime is not None:

        def d2(x, t):
            return (d_prime(t) * D.eval(x, t) + d(t) * D.d2(x, t))[()]

    return Deviation(D.domain, ev, d2, name=f"scaled({D.name})", x_breaks=D.x_breaks)


# -- operations --------------------------------------------------------------


def check_deviation_axioms(
    D: Deviation,
    x_grid: Sequence[float] | None = None,
    t_grid: Sequence[float] | None = None,
    tol: float = 1e-12,
) -> AxiomReport:
    """Grid check of ``D(t, t) = 0`` and strict decrease of ``t -> D(x, t)``.

    A pair ``t_i < t_j`` with ``D(x, t_i) <= D(x, t_j)`` counts as one
    violation; ties count, since the decrease must be strict. Grids default
    to 64 Chebyshev points on a finite window of the domain.

    Ties also arise from rounding alone: for :func:`exponential_kink` on the
    default window, ``exp(x t)`` drops below one ulp of ``exp(x**2)`` once
    ``t`` is large, so a mathematically valid deviation reports violations.
    Pass grids that stay clear of that regime for a meaningful verdict.
    """
    window = D.domain.finite_window()
    x = np.asarray(chebyshev_grid(*window) if x_grid is None else x_grid, dtype=float)
    t = np.asarray(chebyshev_grid(*window) if t_grid is None else t_grid, dtype=float)
    if t.size < 3 or np.any(np.diff(t) <= 0):
        raise ValueError("t_grid must be strictly increasing with at least 3 points")
    for name, g in (("x_grid", x), ("t_grid", t)):
        if not D.domain.contains(g):
            raise GridOutsideDomain(f"{name} has points outside {D.domain}")

    diag = np.abs(np.asarray(D.eval(t, t), dtype=float))
    diag_max = float(np.max(diag)) if np.all(np.isfinite(diag)) else math.inf

    values = np.asarray(D.eval(x[:, None], t[None, :]), dtype=float)  # (n_x, n_t)
    i, j = np.triu_indices(t.size, k=1)
    bad = ~(values[:, i] > values[:, j])
    return AxiomReport(diag_max, int(bad.sum()), x.size, t.size, tol)


def deviation_mean(
    D: Deviation,
    xs,
    *,
    abs_tol: float = ABS_TOL,
    rel_tol: float = REL_TOL,
    max_iter: int = MAX_ITER,
) -> RootResult:
    """The unique ``t`` with ``sum_i D(x_i, t) = 0``.

    The sample is sorted before summing so the objective, and therefore the
    result, is bitwise invariant under permutations of ``xs``.

    Raises:
        EmptySample: ``xs`` is empty.
        DomainViolation: some ``x_i`` lies outside ``D.domain``.
        NoConvergence: the objective has no sign change on the sample range
            or the iteration budget ran out; either way ``D`` is defective.
    """
    xs = np.sort(np.asarray(xs, dtype=float).ravel())
    if xs.size == 0:
        raise EmptySample("deviation mean of an empty sample")
    if not D.domain.contains(xs):
        raise DomainViolation(f"sample leaves the domain {D.domain}")
    lo, hi = float(xs[0]), float(xs[-1])
    if lo == hi:
        return RootResult(lo, lo, lo, 0.0, 0, True)

    def objective(t):
        return float(np.sum(D.eval(xs, t)))

    return find_root_decreasing(objective, lo, hi, abs_tol=abs_tol, rel_tol=rel_tol, max_iter=max_iter)
