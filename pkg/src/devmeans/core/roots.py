"""Bracketed root finding for strictly decreasing scalar functions."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from ..errors import NoConvergence

ABS_TOL = 1e-12
REL_TOL = 1e-12
RESIDUAL_TOL = 1e-10
MAX_ITER = 200


@dataclass(frozen=True)
class RootResult:
    """A located root and how it was found.

    Attributes:
        root: the returned abscissa.
        bracket_lo, bracket_hi: final bracket, always containing ``root``.
        residual: objective value at ``root``.
        iterations: number of objective evaluations after the initial bracket.
        converged: bracket width reached tolerance (or an exact zero was hit).
    """

    root: float
    bracket_lo: float
    bracket_hi: float
    residual: float
    iterations: int
    converged: bool

    @property
    def width(self) -> float:
        return self.bracket_hi - self.bracket_lo


def find_root_decreasing(
    func: Callable[[float], float],
    lo: float,
    hi: float,
    *,
    f_lo: float | None = None,
    f_hi: float | None = None,
    abs_tol: float = ABS_TOL,
    rel_tol: float = REL_TOL,
    max_iter: int = MAX_ITER,
) -> RootResult:
    """Root of a continuous, strictly decreasing ``func`` on ``[lo, hi]``.

    Illinois-style false position, falling back to bisection whenever a step
    fails to halve the bracket. Iterates never leave ``[lo, hi]``, so nothing
    beyond continuity is assumed of ``func``.

    Raises:
        NoConvergence: ``func(lo) > 0 > func(hi)`` fails, ``func`` produced a
            NaN, or ``max_iter`` evaluations did not shrink the bracket
            below ``abs_tol + rel_tol * |root|``.
    """
    if not lo <= hi:
        raise ValueError(f"empty bracket [{lo}, {hi}]")
    f_lo = float(func(lo)) if f_lo is None else float(f_lo)
    if f_lo == 0.0:
        return RootResult(lo, lo, lo, 0.0, 0, True)
    f_hi = float(func(hi)) if f_hi is None else float(f_hi)
    if f_hi == 0.0:
        return RootResult(hi, hi, hi, 0.0, 0, True)
    if not (f_lo > 0.0 > f_hi):
        raise NoConvergence(
            f"no sign change on [{lo}, {hi}]: f(lo)={f_lo}, f(hi)={f_hi}; "
            "objective is not strictly decreasing through zero"
        )

    a, b = lo, hi
    fa, fb = f_lo, f_hi  # true values, for reporting
    wa, wb = f_lo, f_hi  # Illinois-weighted values, for stepping
    last_side = 0
    bisect_next = False
    for it in range(1, max_iter + 1):
        width = b - a
        if width <= abs_tol + rel_tol * max(abs(a), abs(b)):
            return _finish(func, lo, hi, a, b, fa, fb, it - 1)
        if bisect_next:
            m = a + 0.5 * width
        else:
            m = a + wa * width / (wa - wb)
            if not a < m < b:
                m = a + 0.5 * width
        fm = float(func(m))
        if math.isnan(fm):
            raise NoConvergence(f"objective returned NaN at t={m}")
        if fm == 0.0:
            return RootResult(m, m, m, 0.0, it, True)
        if fm > 0.0:
            a, fa, wa = m, fm, fm
            if last_side == 1:
                wb *= 0.5
            last_side = 1
        else:
            b, fb, wb = m, fm, fm
            if last_side == -1:
                wa *= 0.5
            last_side = -1
        bisect_next = (b - a) > 0.5 * width
    width = b - a
    if width <= abs_tol + rel_tol * max(abs(a), abs(b)):
        return _finish(func, lo, hi, a, b, fa, fb, max_iter)
    raise NoConvergence(f"bracket [{a}, {b}] still wider than tolerance after {max_iter} iterations")


def _finish(func, lo, hi, a, b, fa, fb, iterations):
    root, res = (a, fa) if abs(fa) <= abs(fb) else (b, fb)
    if root in (lo, hi):
        # the root is strictly inside (lo, hi); never report a known non-root end
        m = a + 0.5 * (b - a)
        if lo < m < hi:
            fm = float(func(m))
            if not math.isnan(fm):
                return RootResult(m, a, b, fm, iterations + 1, True)
    return RootResult(root, a, b, res, iterations, True)


def golden_section_min(func: Callable[[float], float], a: float, b: float, tol: float = 1e-10, max_iter: int = 400):
    """Minimise a unimodal ``func`` on ``[a, b]``; returns ``(argmin, min)``.

    ``tol`` is absolute in the argument. Infinite function values are allowed
    and simply lose every comparison.
    """
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = func(c), func(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = func(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = func(d)
    return (c, fc) if fc <= fd else (d, fd)
