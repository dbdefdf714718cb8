"""Population deviation means, integrability probing and the M-estimation oracle.

For a random variable ``X`` and a deviation ``D`` the function
``g(t) = E D(X, t)`` is defined on the integrability interval
``{t : E|D(X, t)| < inf}``, is continuous and strictly decreasing there, and
its root (when it has one) is the deviation mean of ``X``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ..core.deviations import Deviation
from ..core.generators import Generator, Weight
from ..core.interval import Interval
from ..core.roots import RootResult, find_root_decreasing, golden_section_min
from ..errors import (
    Divergent,
    DomainViolation,
    GridTooCoarse,
    InverseDomain,
    NoRootInDomain,
    QuadratureBudgetExceeded,
)
from .distributions import DENSITY, DISCRETE, DistributionSpec
from .quadrature import DEFAULT, QuadratureConfig, expect, integrate_density

FINITE = "finite"
DIVERGING = "diverging"
INCONCLUSIVE = "inconclusive"

_CAUCHY_TOL = 1e-8
_MAX_EXPANSIONS = 60
_BOUNDARY_BISECTIONS = 25


@dataclass(frozen=True)
class IntegrabilityProbe:
    """Partial integrals of ``|D(X, t)|`` over growing windows and the verdict drawn from them."""

    t: float
    verdict: str
    truncated_values: tuple[float, ...]

    @property
    def ok(self) -> bool:
        return self.verdict != DIVERGING


@dataclass(frozen=True)
class PopulationMeanResult:
    t0: float
    residual: float
    interior_point: bool
    probe: tuple[IntegrabilityProbe | None, IntegrabilityProbe | None]
    root: RootResult | None = None
    diagnostic: str = ""


# -- probing -----------------------------------------------------------------


def _windows(dist: DistributionSpec, tail_cut: float) -> list[tuple[float, float]]:
    lo, hi = dist.support.lo, dist.support.hi
    levels = []
    k = 1
    while 10.0**-k >= tail_cut * (1 - 1e-9):
        levels.append(10.0**-k)
        k += 1
    if dist.ppf is not None:
        return [
            (lo if math.isfinite(lo) else dist.ppf(q), hi if math.isfinite(hi) else dist.ppf(1.0 - q)) for q in levels
        ]
    c = dist.center
    out = []
    for j in range(len(levels)):
        r = 2.0**j
        out.append((lo if math.isfinite(lo) else c - r, hi if math.isfinite(hi) else c + r))
    return out


def probe_function(h: Callable[[float], float], dist: DistributionSpec, cfg: QuadratureConfig = DEFAULT, points=(), t: float = math.nan) -> IntegrabilityProbe:
    """Classify ``E|h(X)|`` as finite, diverging or inconclusive.

    Bounded supports and discrete laws need a single integral. Otherwise the
    windows run from the ``10^-1`` to the ``tail_cut`` quantiles; the verdict
    is *finite* when the last three partial integrals agree to 1e-8 relative,
    *diverging* when the deepest one more than doubles its predecessor (or
    an integral overflows), and *inconclusive* in between.
    """
    absh = lambda x: abs(float(h(x)))  # noqa: E731
    if dist.kind == DISCRETE:
        try:
            v = expect(absh, dist, cfg)
        except Divergent:
            return IntegrabilityProbe(t, DIVERGING, (math.inf,))
        return IntegrabilityProbe(t, FINITE, (v,))
    if dist.kind != DENSITY:
        expect(absh, dist, cfg)  # raises SamplerOnlyUnsupported
    if dist.support.is_bounded:
        try:
            v, _ = integrate_density(absh, dist, cfg, points)
        except (Divergent, QuadratureBudgetExceeded):
            return IntegrabilityProbe(t, DIVERGING, (math.inf,))
        return IntegrabilityProbe(t, FINITE, (v,))

    partial: list[float] = []
    acc = 0.0
    prev = None
    for a, b in _windows(dist, cfg.tail_cut):
        shells = [(a, b)] if prev is None else [(a, prev[0]), (prev[1], b)]
        try:
            for sa, sb in shells:
                if sb > sa:
                    acc += integrate_density(absh, dist, cfg, points, lo=sa, hi=sb)[0]
        except (Divergent, QuadratureBudgetExceeded):
            partial.append(math.inf)
            return IntegrabilityProbe(t, DIVERGING, tuple(partial))
        if not math.isfinite(acc):
            partial.append(math.inf)
            return IntegrabilityProbe(t, DIVERGING, tuple(partial))
        partial.append(acc)
        prev = (a, b)
    last3 = partial[-3:]
    if abs(last3[-1] - last3[0]) <= _CAUCHY_TOL * abs(last3[-1]) or last3[-1] == 0.0:
        return IntegrabilityProbe(t, FINITE, tuple(partial))
    if len(partial) >= 2 and partial[-1] > 2.0 * partial[-2]:
        return IntegrabilityProbe(t, DIVERGING, tuple(partial))
    return IntegrabilityProbe(t, INCONCLUSIVE, tuple(partial))


def integrability_probe(D: Deviation, dist: DistributionSpec, t: float, cfg: QuadratureConfig = DEFAULT) -> IntegrabilityProbe:
    """Probe whether ``t`` belongs to the integrability interval of ``D`` under ``dist``."""
    if not D.domain.contains(t):
        raise DomainViolation(f"t={t} outside {D.domain}")
    return probe_function(lambda x: D.eval(x, t), dist, cfg, points=(t, *D.x_breaks), t=t)


# -- expectations ------------------------------------------------------------


def expect_deviation(D: Deviation, dist: DistributionSpec, t: float, cfg: QuadratureConfig = DEFAULT, probe: bool = True) -> float:
    """``g(t) = E D(X, t)``.

    Raises:
        Divergent: the integrability probe at ``t`` reports divergence.
    """
    if not D.domain.contains(t):
        raise DomainViolation(f"t={t} outside {D.domain}")
    if probe:
        pr = integrability_probe(D, dist, t, cfg)
        if pr.verdict == DIVERGING:
            raise Divergent(f"E|D(X, {t})| appears infinite")
    return expect(lambda x: D.eval(x, t), dist, cfg, points=(t, *D.x_breaks))


def _scale(dist: DistributionSpec) -> float:
    if dist.ppf is not None:
        iqr = dist.ppf(0.75) - dist.ppf(0.25)
        if iqr > 0:
            return iqr
    if dist.kind == DISCRETE and len(dist.atoms) > 1:
        return 0.5 * (dist.atoms[-1] - dist.atoms[0])
    return 1.0


def _closed_hull(dist: DistributionSpec) -> Interval:
    """Closure of the support: the deviation mean cannot leave it."""
    s = dist.support
    if dist.kind == DISCRETE:
        lo, hi = dist.atoms[0], dist.atoms[-1]
        if lo == hi:
            return Interval.closed(lo - 1.0, lo + 1.0)
        return Interval.closed(lo, hi)
    return Interval(s.lo, s.hi, math.isinf(s.lo), math.isinf(s.hi))


def population_mean(
    D: Deviation,
    dist: DistributionSpec,
    search: Interval | None = None,
    cfg: QuadratureConfig = DEFAULT,
) -> PopulationMeanResult:
    """Root of ``g(t) = E D(X, t)`` on ``search`` (default: the deviation's domain).

    A bracket is grown geometrically from the law's center in the direction
    ``g`` points to. If the walk leaves the integrability interval, its edge is
    located by bisection; reaching that edge (or the search boundary) with no
    sign change means there is no root. The interior-point flag comes from
    probes at ``t0 +- 1e-6 (1 + |t0|)``.

    Raises:
        NoRootInDomain: ``g`` keeps one sign on the searchable region.
        Divergent: no integrable starting point was found.
    """
    search = D.domain if search is None else search
    if search.lo < D.domain.lo or search.hi > D.domain.hi:
        raise DomainViolation(f"search interval {search} is not inside {D.domain}")
    region = search.intersect(_closed_hull(dist)) if _overlaps(search, _closed_hull(dist)) else search

    def g_safe(t, with_probe=True):
        try:
            return expect_deviation(D, dist, t, cfg, probe=with_probe)
        except (Divergent, QuadratureBudgetExceeded):
            return None

    s0 = _clamp_inside(dist.center, region)
    h = _scale(dist)
    g0 = g_safe(s0)
    if g0 is None:
        s0, g0 = _find_integrable(g_safe, s0, h, region)
    if g0 == 0.0:
        return _finish(D, dist, cfg, s0, 0.0, None)

    direction = 1.0 if g0 > 0 else -1.0
    prev, gprev = s0, g0
    bracket = None
    for k in range(_MAX_EXPANSIONS):
        cand = s0 + direction * h * 2.0**k
        edge = region.hi if direction > 0 else region.lo
        edge_open = region.hi_open if direction > 0 else region.lo_open
        at_edge = False
        if (direction > 0 and cand >= edge) or (direction < 0 and cand <= edge):
            if math.isinf(edge):
                continue
            if edge_open:
                cand = prev + 0.5 * (edge - prev)
            else:
                cand, at_edge = edge, True
        gc = g_safe(cand)
        if gc is None:
            bracket, last_good = _bisect_integrability(g_safe, prev, gprev, cand)
            if bracket is None:
                raise NoRootInDomain(
                    f"E D(X, t) keeps the sign of {gprev:+.3g} up to the edge of the integrability interval near t={last_good:.6g}"
                )
            break
        if gc == 0.0:
            return _finish(D, dist, cfg, cand, 0.0, None)
        if (gc > 0) != (gprev > 0):
            bracket = (prev, gprev, cand, gc)
            break
        prev, gprev = cand, gc
        if at_edge or (edge_open and math.isfinite(edge) and abs(edge - prev) <= 1e-12 * (1 + abs(edge))):
            break
    if bracket is None:
        raise NoRootInDomain(f"E D(X, t) keeps one sign on {region}")

    a, ga, b, gb = bracket
    if a > b:
        a, ga, b, gb = b, gb, a, ga
    root = find_root_decreasing(lambda t: expect_deviation(D, dist, t, cfg, probe=False), a, b, f_lo=ga, f_hi=gb)
    return _finish(D, dist, cfg, root.root, root.residual, root)


def _overlaps(a: Interval, b: Interval) -> bool:
    return max(a.lo, b.lo) < min(a.hi, b.hi)


def _clamp_inside(x: float, region: Interval) -> float:
    if region.contains(x):
        return x
    lo, hi = region.finite_window(half_width=1.0, inset=1e-3)
    return min(max(x, lo), hi)


def _find_integrable(g_safe, s0, h, region):
    for k in range(_MAX_EXPANSIONS):
        for cand in (s0 + h * 2.0**k, s0 - h * 2.0**k):
            if region.contains(cand):
                gc = g_safe(cand)
                if gc is not None:
                    return cand, gc
    raise Divergent("no point with E|D(X, t)| < inf was found")


def _bisect_integrability(g_safe, good, g_good, bad):
    """Walk from an integrable ``good`` towards a non-integrable ``bad`` looking for a sign change."""
    for _ in range(_BOUNDARY_BISECTIONS):
        mid = 0.5 * (good + bad)
        gm = g_safe(mid)
        if gm is None:
            bad = mid
            continue
        if gm == 0.0 or (gm > 0) != (g_good > 0):
            return (good, g_good, mid, gm), mid
        good, g_good = mid, gm
    return None, good


def _finish(D, dist, cfg, t0, residual, root):
    eps = 1e-6 * (1.0 + abs(t0))
    probes = []
    notes = []
    for side, t in (("left", t0 - eps), ("right", t0 + eps)):
        if not D.domain.contains(t):
            probes.append(None)
            notes.append(f"{side} probe t={t:.6g} outside domain {D.domain}")
            continue
        pr = integrability_probe(D, dist, t, cfg)
        probes.append(pr)
        if pr.verdict == DIVERGING:
            notes.append(f"{side} probe t={t:.6g} diverges")
    interior = not notes
    return PopulationMeanResult(float(t0), abs(float(residual)), interior, tuple(probes), root, "; ".join(notes))


# -- generator-based expected values ----------------------------------------


def _checked_expect(h, dist, cfg, what):
    pr = probe_function(h, dist, cfg)
    if pr.verdict == DIVERGING:
        raise Divergent(f"E|{what}| appears infinite")
    return expect(h, dist, cfg)


def quasi_arithmetic_expected_value(f: Generator, dist: DistributionSpec, cfg: QuadratureConfig = DEFAULT) -> float:
    """``f^-1(E f(X))``.

    Raises:
        Divergent: ``E|f(X)|`` is infinite.
        InverseDomain: ``E f(X)`` fell outside ``f(I)``; for a law carried by
            ``I`` this cannot happen, so it flags a numerical problem.
    """
    m = _checked_expect(lambda x: f(x), dist, cfg, f"{f.name}(X)")
    if not f.image.contains(m):
        raise InverseDomain(f"E {f.name}(X) = {m} is outside the image {f.image}")
    return float(f.inverse(m))


def bajraktarevic_expected_value(f: Generator, p: Weight, dist: DistributionSpec, cfg: QuadratureConfig = DEFAULT) -> float:
    """``f^-1(E[p(X) f(X)] / E[p(X)])``."""
    ep = _checked_expect(lambda x: p(x), dist, cfg, "p(X)")
    epf = _checked_expect(lambda x: p(x) * f(x), dist, cfg, "p(X) f(X)")
    ratio = epf / ep
    if not f.image.contains(ratio):
        raise InverseDomain(f"E[p f]/E[p] = {ratio} is outside the image {f.image}")
    return float(f.inverse(ratio))


# -- M-estimation oracle -----------------------------------------------------

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(31)


def _gl(D: Deviation, x, a, b):
    """``int_a^b D(x, s) ds`` by 31-point Gauss-Legendre, vectorised over ``x`` and ``b``."""
    half = 0.5 * (np.asarray(b, dtype=float) - a)
    s = (a + half)[..., None] + half[..., None] * _GL_NODES
    vals = np.asarray(D.eval(np.asarray(x, dtype=float)[..., None], s), dtype=float)
    return half * (vals @ _GL_WEIGHTS)


def _gl_refined(D, x, a, b):
    whole = _gl(D, x, a, b)
    mid = 0.5 * (np.asarray(a, dtype=float) + b)
    halves = _gl(D, x, a, mid) + _gl(D, x, mid, b)
    return np.where(np.abs(whole - halves) <= 1e-9 * (1.0 + np.abs(halves)), whole, halves)


def sample_rho(D: Deviation, xs, t: float) -> float:
    """``sum_i rho(x_i, t)`` with ``rho(x, t) = int_x^t -D(x, s) ds``."""
    xs = np.asarray(xs, dtype=float)
    return float(-np.sum(_gl_refined(D, xs, xs, np.full_like(xs, t))))


def population_rho(D: Deviation, dist: DistributionSpec, t: float, anchor: float, cfg: QuadratureConfig = DEFAULT) -> float:
    """``E int_anchor^t -D(X, s) ds``; differs from ``E rho(X, t)`` by a constant, and stays finite
    even when ``E rho(X, t)`` does not."""

    def inner(x):
        lo, hi = (anchor, t) if anchor <= t else (t, anchor)
        sign = 1.0 if anchor <= t else -1.0
        cuts = [lo, *(c for c in (x, *D.x_breaks) if lo < c < hi), hi]
        total = 0.0
        for a, b in zip(cuts[:-1], cuts[1:]):
            total += float(_gl(D, np.asarray(x), np.asarray(a), np.asarray(b)))
        return -sign * total

    return expect(inner, dist, cfg, points=(anchor, t, *D.x_breaks))


def argmin_oracle(D: Deviation, dist_or_sample, t_grid: Sequence[float], cfg: QuadratureConfig | None = None) -> float:
    """Minimiser of the M-estimation objective ``t -> E rho(X, t)`` (or ``sum_i rho(x_i, t)``).

    The objective is scanned on ``t_grid`` and the best cell refined by golden
    section. Only integrals of ``D`` are used, never its roots, so this is an
    independent check on :func:`population_mean` and
    :func:`~devmeans.core.deviations.deviation_mean`.

    Raises:
        GridTooCoarse: the grid minimum sits on the grid boundary.
    """
    grid = np.asarray(t_grid, dtype=float)
    if grid.size < 3 or np.any(np.diff(grid) <= 0):
        raise ValueError("t_grid must be strictly increasing with at least 3 points")
    if isinstance(dist_or_sample, DistributionSpec):
        cfg = cfg or QuadratureConfig(abs_tol=1e-12, rel_tol=1e-12)
        anchor = float(grid[grid.size // 2])
        objective = lambda t: population_rho(D, dist_or_sample, t, anchor, cfg)  # noqa: E731
    else:
        xs = np.asarray(dist_or_sample, dtype=float)
        if xs.size and xs.min() == xs.max() and grid[0] < xs[0] < grid[-1]:
            return float(xs[0])
        objective = lambda t: sample_rho(D, xs, t)  # noqa: E731
    values = np.array([objective(t) for t in grid])
    i = int(np.argmin(values))
    if i == 0 or i == grid.size - 1:
        raise GridTooCoarse(f"objective minimum at grid edge t={grid[i]}")
    t_star, _ = golden_section_min(objective, grid[i - 1], grid[i + 1], tol=1e-9 * (1.0 + abs(grid[i])))
    return float(t_star)


__all__ = [
    "DIVERGING",
    "FINITE",
    "INCONCLUSIVE",
    "IntegrabilityProbe",
    "PopulationMeanResult",
    "argmin_oracle",
    "bajraktarevic_expected_value",
    "expect_deviation",
    "integrability_probe",
    "population_mean",
    "population_rho",
    "probe_function",
    "quasi_arithmetic_expected_value",
    "sample_rho",
]
