"""Univariate laws: discrete, density-on-an-interval, or sampler-only.

Every preset can sample. Discrete and density laws also support expectations
(see :mod:`devmeans.population.quadrature`).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import special

from ..core.interval import Interval

DISCRETE = "discrete"
DENSITY = "density"
SAMPLER_ONLY = "sampler"


@dataclass(frozen=True)
class DistributionSpec:
    """Law of a real random variable.

    Attributes:
        kind: ``"discrete"``, ``"density"`` or ``"sampler"``.
        name: preset name.
        support: interval carrying all the mass.
        sampler: ``(rng, n) -> array`` of ``n`` i.i.d. draws.
        atoms, probs: atoms and their probabilities (discrete only).
        pdf: density (density only).
        logpdf: log-density, exact far into the tails where ``pdf`` underflows.
        cdf, ppf: distribution and quantile functions, when known.
        median: a central point used to start searches.
        breakpoints: points where the density is not smooth.
        esssup: essential supremum of the law.
        moments: known raw moments ``{k: E[X**k]}``.
        params: constructor parameters, for reports.
    """

    kind: str
    name: str
    support: Interval
    sampler: Callable
    atoms: tuple[float, ...] = ()
    probs: tuple[float, ...] = ()
    pdf: Callable | None = None
    logpdf: Callable | None = None
    cdf: Callable | None = None
    ppf: Callable | None = None
    median: float | None = None
    breakpoints: tuple[float, ...] = ()
    esssup: float = math.inf
    moments: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind == DISCRETE:
            if len(self.atoms) != len(self.probs) or not self.atoms:
                raise ValueError("discrete law needs matching, nonempty atoms and probs")
            if any(not p > 0 for p in self.probs):
                raise ValueError("discrete probabilities must be positive")
            if abs(math.fsum(self.probs) - 1.0) > 1e-12:
                raise ValueError("discrete probabilities must sum to 1")
        elif self.kind == DENSITY:
            if self.pdf is None:
                raise ValueError("density law needs a pdf")
        elif self.kind != SAMPLER_ONLY:
            raise ValueError(f"unknown kind {self.kind!r}")

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return np.asarray(self.sampler(rng, n), dtype=float)

    @property
    def center(self) -> float:
        """Start point for bracket searches: the median, or a middle atom."""
        if self.median is not None:
            return float(self.median)
        if self.kind == DISCRETE:
            return float(sorted(self.atoms)[(len(self.atoms) - 1) // 2])
        lo, hi = self.support.finite_window(half_width=1.0, inset=0.0)
        return 0.5 * (lo + hi)

    @property
    def is_degenerate(self) -> bool:
        return self.kind == DISCRETE and len(self.atoms) == 1

    def __repr__(self) -> str:
        args = ", ".join(f"{k}={v!r}" for k, v in self.params.items())
        return f"{self.name}({args})"


    def total_mass(self) -> float:
        """Integral of the density over the support, or the sum of the probabilities."""
        if self.kind == DISCRETE:
            return math.fsum(self.probs)
        if self.kind != DENSITY:
            raise TypeError("a sampler-only law has no accessible mass function")
        from .quadrature import integrate_density

        return integrate_density(lambda x: 1.0, self)[0]


MASS_TOL = 1e-8


def _normalised(factory):
    """Reject a preset density whose total mass is not 1 within ``MASS_TOL``."""

    @functools.wraps(factory)
    def build(*args, **kwargs):
        dist = factory(*args, **kwargs)
        mass = dist.total_mass()
        if abs(mass - 1.0) > MASS_TOL:
            raise ValueError(f"{dist!r} has total mass {mass!r}")
        return dist

    return build


# -- presets -----------------------------------------------------------------


@_normalised
def exponential(rate: float = 1.0) -> DistributionSpec:
    if not rate > 0:
        raise ValueError("rate must be positive")
    return DistributionSpec(
        DENSITY,
        "exponential",
        Interval(0.0, math.inf, False, True),
        sampler=lambda rng, n: -np.log1p(-rng.random(n)) / rate,
        pdf=lambda x: rate * math.exp(-rate * x),
        logpdf=lambda x: math.log(rate) - rate * x,
        cdf=lambda x: -math.expm1(-rate * x) if x > 0 else 0.0,
        ppf=lambda q: -math.log1p(-q) / rate,
        median=math.log(2.0) / rate,
        moments={k: math.factorial(k) / rate**k for k in range(9)},
        params={"rate": rate},
    )


@_normalised
def inverse_quartic() -> DistributionSpec:
    """Density ``3 x**-4`` on ``(1, inf)``; finite second but infinite third moment."""
    return DistributionSpec(
        DENSITY,
        "inverse-quartic",
        Interval(1.0, math.inf, True, True),
        sampler=lambda rng, n: (1.0 - rng.random(n)) ** (-1.0 / 3.0),
        pdf=lambda x: 3.0 * x**-4,
        logpdf=lambda x: math.log(3.0) - 4.0 * math.log(x),
        cdf=lambda x: 1.0 - x**-3 if x > 1 else 0.0,
        ppf=lambda q: (1.0 - q) ** (-1.0 / 3.0),
        median=2.0 ** (1.0 / 3.0),
        moments={0: 1.0, 1: 1.5, 2: 3.0},
    )


def _norm_ppf(q):
    return float(special.ndtri(q))


def _norm_cdf(z):
    return float(special.ndtr(z))


@_normalised
def lognormal(mu: float = 0.0, sigma: float = 1.0) -> DistributionSpec:
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    c = 1.0 / (sigma * math.sqrt(2.0 * math.pi))

    def pdf(x):
        if x <= 0:
            return 0.0
        z = (math.log(x) - mu) / sigma
        return c / x * math.exp(-0.5 * z * z)

    def logpdf(x):
        if x <= 0:
            return -math.inf
        z = (math.log(x) - mu) / sigma
        return math.log(c) - math.log(x) - 0.5 * z * z

    return DistributionSpec(
        DENSITY,
        "lognormal",
        Interval.positive(),
        sampler=lambda rng, n: np.exp(mu + sigma * rng.standard_normal(n)),
        pdf=pdf,
        logpdf=logpdf,
        cdf=lambda x: _norm_cdf((math.log(x) - mu) / sigma) if x > 0 else 0.0,
        ppf=lambda q: math.exp(mu + sigma * _norm_ppf(q)),
        median=math.exp(mu),
        moments={k: math.exp(k * mu + 0.5 * k * k * sigma * sigma) for k in range(9)},
        params={"mu": mu, "sigma": sigma},
    )


@_normalised
def shifted_lognormal(mu: float = 0.0, sigma: float = 1.0, shift: float = -2.0) -> DistributionSpec:
    """``exp(eta) + shift`` with ``eta ~ N(mu, sigma^2)``; support ``(shift, inf)``."""
    base = lognormal(mu, sigma)
    return DistributionSpec(
        DENSITY,
        "shifted-lognormal",
        Interval(shift, math.inf, True, True),
        sampler=lambda rng, n: np.exp(mu + sigma * rng.standard_normal(n)) + shift,
        pdf=lambda x: base.pdf(x - shift),
        logpdf=lambda x: base.logpdf(x - shift),
        cdf=lambda x: base.cdf(x - shift),
        ppf=lambda q: base.ppf(q) + shift,
        median=math.exp(mu) + shift,
        params={"mu": mu, "sigma": sigma, "shift": shift},
    )


@_normalised
def uniform(a: float = 0.0, b: float = 1.0) -> DistributionSpec:
    if not a < b:
        raise ValueError("uniform needs a < b")
    h = 1.0 / (b - a)
    return DistributionSpec(
        DENSITY,
        "uniform",
        Interval.closed(a, b),
        sampler=lambda rng, n: a + (b - a) * rng.random(n),
        pdf=lambda x: h if a <= x <= b else 0.0,
        cdf=lambda x: min(max((x - a) * h, 0.0), 1.0),
        ppf=lambda q: a + (b - a) * q,
        median=0.5 * (a + b),
        esssup=b,
        moments={k: (b ** (k + 1) - a ** (k + 1)) / ((k + 1) * (b - a)) for k in range(9)},
        params={"a": a, "b": b},
    )


@_normalised
def normal(mu: float = 0.0, sigma: float = 1.0) -> DistributionSpec:
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    c = 1.0 / (sigma * math.sqrt(2.0 * math.pi))
    return DistributionSpec(
        DENSITY,
        "normal",
        Interval(),
        sampler=lambda rng, n: mu + sigma * rng.standard_normal(n),
        pdf=lambda x: c * math.exp(-0.5 * ((x - mu) / sigma) ** 2),
        logpdf=lambda x: math.log(c) - 0.5 * ((x - mu) / sigma) ** 2,
        cdf=lambda x: _norm_cdf((x - mu) / sigma),
        ppf=lambda q: mu + sigma * _norm_ppf(q),
        median=mu,
        moments={0: 1.0, 1: mu, 2: mu * mu + sigma * sigma},
        params={"mu": mu, "sigma": sigma},
    )


@_normalised
def truncated_normal(mu: float = 0.0, sigma: float = 1.0, a: float = -1.0, b: float = 1.0) -> DistributionSpec:
    """``N(mu, sigma^2)`` conditioned on ``[a, b]``; sampled by inverse CDF."""
    if not (sigma > 0 and a < b):
        raise ValueError("truncated normal needs sigma > 0 and a < b")
    alpha, beta = (a - mu) / sigma, (b - mu) / sigma
    Fa, Fb = _norm_cdf(alpha), _norm_cdf(beta)
    Z = Fb - Fa
    c = 1.0 / (sigma * math.sqrt(2.0 * math.pi) * Z)

    def ppf(q):
        return mu + sigma * _norm_ppf(Fa + q * Z)

    return DistributionSpec(
        DENSITY,
        "truncated-normal",
        Interval.closed(a, b),
        sampler=lambda rng, n: mu + sigma * special.ndtri(Fa + rng.random(n) * Z),
        pdf=lambda x: c * math.exp(-0.5 * ((x - mu) / sigma) ** 2) if a <= x <= b else 0.0,
        cdf=lambda x: min(max((_norm_cdf((x - mu) / sigma) - Fa) / Z, 0.0), 1.0),
        ppf=ppf,
        median=ppf(0.5),
        esssup=b,
        params={"mu": mu, "sigma": sigma, "a": a, "b": b},
    )


def truncated_normal_mgf(c: float, mu: float, sigma: float, a: float, b: float) -> float:
    """Closed-form ``E exp(c X)`` for :func:`truncated_normal`."""
    alpha, beta = (a - mu) / sigma, (b - mu) / sigma
    num = _norm_cdf(beta - sigma * c) - _norm_cdf(alpha - sigma * c)
    return math.exp(mu * c + 0.5 * sigma * sigma * c * c) * num / (_norm_cdf(beta) - _norm_cdf(alpha))


def discrete(values, probs=None, name: str = "discrete", support: Interval | None = None) -> DistributionSpec:
    """Finite law on ``values``; uniform when ``probs`` is omitted. Repeated values are merged."""
    values = [float(v) for v in values]
    if not values:
        raise ValueError("discrete law needs at least one atom")
    if probs is None:
        probs = [1.0 / len(values)] * len(values)
    probs = [float(p) for p in probs]
    if len(probs) != len(values):
        raise ValueError("values and probs differ in length")
    merged: dict[float, float] = {}
    for v, p in zip(values, probs):
        merged[v] = merged.get(v, 0.0) + p
    atoms = tuple(sorted(merged))
    pr = tuple(merged[v] for v in atoms)
    atom_arr = np.asarray(atoms)
    cum = np.cumsum(pr)
    cum[-1] = 1.0

    def sampler(rng, n):
        return atom_arr[np.searchsorted(cum, rng.random(n), side="right")]

    if support is None:
        lo, hi = atoms[0], atoms[-1]
        support = Interval.closed(lo, hi) if lo < hi else Interval.closed(lo - 1.0, lo + 1.0)
    return DistributionSpec(
        DISCRETE,
        name,
        support,
        sampler=sampler,
        atoms=atoms,
        probs=pr,
        esssup=atoms[-1],
        moments={k: math.fsum(p * v**k for v, p in zip(atoms, pr)) for k in range(9)},
        params={"values": list(atoms), "probs": list(pr)},
    )


def bernoulli(p: float = 0.5) -> DistributionSpec:
    if not 0 < p < 1:
        raise ValueError("bernoulli needs 0 < p < 1")
    d = discrete([0.0, 1.0], [1.0 - p, p], name="bernoulli", support=Interval.closed(0.0, 1.0))
    # inverse-CDF draw: 1 when U > 1 - p
    return DistributionSpec(
        DISCRETE,
        "bernoulli",
        d.support,
        sampler=lambda rng, n: (rng.random(n) >= 1.0 - p).astype(float),
        atoms=d.atoms,
        probs=d.probs,
        esssup=1.0,
        moments={k: (p if k else 1.0) for k in range(9)},
        params={"p": p},
    )


def pointmass(v: float = 0.0, support: Interval | None = None) -> DistributionSpec:
    d = discrete([v], [1.0], name="pointmass", support=support)
    return DistributionSpec(
        DISCRETE,
        "pointmass",
        d.support,
        sampler=lambda rng, n: np.full(n, float(v)),
        atoms=d.atoms,
        probs=d.probs,
        esssup=float(v),
        moments=d.moments,
        params={"v": float(v)},
    )


def sampler_only(sampler: Callable, name: str = "sampler", support: Interval | None = None) -> DistributionSpec:
    return DistributionSpec(SAMPLER_ONLY, name, support or Interval(), sampler=sampler)


PRESETS = {
    "exponential": exponential,
    "inverse-quartic": inverse_quartic,
    "lognormal": lognormal,
    "shifted-lognormal": shifted_lognormal,
    "uniform": uniform,
    "normal": normal,
    "truncated-normal": truncated_normal,
    "bernoulli": bernoulli,
    "discrete": discrete,
    "pointmass": pointmass,
}
