"""Simulations of the strong law, the central limit theorem and the iterated logarithm."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr

from ..asymptotics.constants import asymptotic_constants
from ..core.deviations import Deviation, deviation_mean
from ..core.roots import find_root_decreasing
from ..errors import DegenerateDistribution
from ..population.distributions import DistributionSpec
from ..population.expectations import population_mean
from .sampling import ExperimentConfig, dyadic_checkpoints, run_replications, sample, stream
from .stats import ks_statistic


@dataclass(frozen=True)
class SllnReport:
    """Deviation means along nested prefixes of one sample per replication.

    ``estimates[r][k]`` is ``M_n`` for ``n = n_list[k]`` in replication ``r``;
    ``lower``/``upper`` hold the prefix minima and maxima.
    """

    t0: float
    n_list: tuple[int, ...]
    mean_abs_error: tuple[float, ...]
    estimates: tuple[tuple[float, ...], ...]
    lower: tuple[tuple[float, ...], ...]
    upper: tuple[tuple[float, ...], ...]
    seed: int

    @property
    def final_estimates(self) -> tuple[float, ...]:
        return tuple(row[-1] for row in self.estimates)


@dataclass(frozen=True)
class CltReport:
    t0: float
    n: int
    sigma2: float
    z: tuple[float, ...]
    ks_stat: float
    seed: int


@dataclass(frozen=True)
class LilReport:
    """Scaled deviations ``(M_n - t0) / sqrt(2 ln ln n / n)`` along one trajectory."""

    t0: float
    lil_c: float
    checkpoints: tuple[int, ...]
    scaled: tuple[float, ...]
    burn_in: int
    running_max: float
    running_min: float
    seed: int


def run_slln(D: Deviation, dist: DistributionSpec, cfg: ExperimentConfig) -> SllnReport:
    """Error ``|M_n - t0|`` along nested prefixes, averaged over replications."""
    t0 = population_mean(D, dist).t0
    sizes = cfg.n_list

    def one(r):
        xs = sample(dist, sizes[-1], stream(cfg.seed, r))
        est, lo, hi = [], [], []
        for n in sizes:
            prefix = xs[:n]
            est.append(deviation_mean(D, prefix).root)
            lo.append(float(prefix.min()))
            hi.append(float(prefix.max()))
        return tuple(est), tuple(lo), tuple(hi)

    rows = run_replications(one, cfg.replications, cfg.threads)
    est = np.array([row[0] for row in rows])
    mae = tuple(float(v) for v in np.mean(np.abs(est - t0), axis=0))
    return SllnReport(
        t0,
        sizes,
        mae,
        tuple(row[0] for row in rows),
        tuple(row[1] for row in rows),
        tuple(row[2] for row in rows),
        cfg.seed,
    )


def run_clt(D: Deviation, dist: DistributionSpec, cfg: ExperimentConfig) -> CltReport:
    """KS distance between ``sqrt(n) (M_n - t0) / sigma`` and the standard normal.

    Raises:
        DegenerateDistribution: the law is a point mass.
    """
    const = asymptotic_constants(D, dist)
    n = cfg.n_list[-1]
    scale = math.sqrt(n / const.sigma2)

    def one(r):
        xs = sample(dist, n, stream(cfg.seed, r))
        return scale * (deviation_mean(D, xs).root - const.t0)

    z = run_replications(one, cfg.replications, cfg.threads)
    return CltReport(const.t0, n, const.sigma2, tuple(z), ks_statistic(z, ndtr), cfg.seed)


def _prefix_root(D: Deviation, xs: np.ndarray, lo: float, hi: float, guess: float) -> float:
    """Root of ``sum D(xs, t)`` on ``[lo, hi]``, bracketed outward from ``guess``."""
    if lo == hi:
        return lo

    def objective(t):
        return float(np.sum(D.eval(xs, t)))

    guess = min(max(guess, lo), hi)
    g = objective(guess)
    if g == 0.0:
        return guess
    step = 1e-3 * (hi - lo)
    a = b = guess
    fa = fb = g
    while True:
        if g > 0:
            a, fa = b, fb
            b = min(hi, b + step)
            fb = objective(b)
            if fb <= 0 or b == hi:
                break
        else:
            b, fb = a, fa
            a = max(lo, a - step)
            fa = objective(a)
            if fa >= 0 or a == lo:
                break
        step *= 4.0
    return find_root_decreasing(objective, a, b, f_lo=fa, f_hi=fb).root


def run_lil(D: Deviation, dist: DistributionSpec, cfg: ExperimentConfig, burn_in: int = 1000) -> LilReport:
    """One long trajectory of the scaled deviation from ``t0``.

    A point mass is allowed here: its trajectory is identically zero and
    ``lil_c`` is reported as 0.
    """
    max_n = cfg.trajectory_length
    try:
        const = asymptotic_constants(D, dist)
        t0, lil_c = const.t0, const.lil_c
    except DegenerateDistribution:
        if not dist.is_degenerate:
            raise
        t0, lil_c = population_mean(D, dist).t0, 0.0
    cps = dyadic_checkpoints(max_n) if cfg.checkpoints == "dyadic" else cfg.checkpoints
    if cps[0] < 3 or cps[-1] > max_n:
        raise ValueError(f"checkpoints must lie in [3, {max_n}]")
    xs = sample(dist, max_n, stream(cfg.seed, 0))
    run_lo = np.minimum.accumulate(xs)
    run_hi = np.maximum.accumulate(xs)
    scaled = []
    guess = t0
    for n in cps:
        m = _prefix_root(D, xs[:n], float(run_lo[n - 1]), float(run_hi[n - 1]), guess)
        guess = m
        scaled.append((m - t0) / math.sqrt(2.0 * math.log(math.log(n)) / n))
    tail = [s for n, s in zip(cps, scaled) if n >= burn_in]
    run_max = max(tail) if tail else math.nan
    run_min = min(tail) if tail else math.nan
    return LilReport(t0, lil_c, tuple(cps), tuple(scaled), burn_in, run_max, run_min, cfg.seed)
