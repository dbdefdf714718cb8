"""Closed-form means: quasi-arithmetic, Bajraktarevic, symmetric-polynomial and Beta-type."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from ..errors import BadK, DomainViolation, EmptySample, NonpositiveInput, NonpositiveWeight, SampleTooSmall, ZeroLeadingCoefficient
from .generators import Generator, Weight


def _sample(xs) -> np.ndarray:
    xs = np.asarray(xs, dtype=float).ravel()
    if xs.size == 0:
        raise EmptySample("mean of an empty sample")
    return xs


def _clip(value: float, xs: np.ndarray) -> float:
    # f^-1(f(v)) can land an ulp outside the sample range
    return float(min(max(value, xs.min()), xs.max()))


def quasi_arithmetic_mean(f: Generator, xs) -> float:
    """``f^-1(mean(f(x_i)))``."""
    xs = _sample(xs)
    if not f.domain.contains(xs):
        raise DomainViolation(f"sample leaves the generator domain {f.domain}")
    if xs.min() == xs.max():
        return float(xs[0])
    return _clip(float(f.inverse(math.fsum(np.asarray(f(xs), dtype=float)) / xs.size)), xs)


def bajraktarevic_mean(f: Generator, p: Weight, xs) -> float:
    """``f^-1(sum p(x_i) f(x_i) / sum p(x_i))``; reduces to the quasi-arithmetic mean for ``p = 1``."""
    xs = _sample(xs)
    if not f.domain.contains(xs):
        raise DomainViolation(f"sample leaves the generator domain {f.domain}")
    w = np.broadcast_to(np.asarray(p(xs), dtype=float), xs.shape)
    if np.any(~(w > 0)):
        raise NonpositiveWeight("weights must be positive on the sample")
    if xs.min() == xs.max():
        return float(xs[0])
    fx = np.asarray(f(xs), dtype=float)
    num = math.fsum(w * fx)
    den = math.fsum(w)
    return _clip(float(f.inverse(num / den)), xs)


def elementary_symmetric_mean(k: int, xs) -> float:
    """``(e_k(x) / C(n, k)) ** (1/k)``, where ``e_k`` is the k-th elementary symmetric polynomial.

    The normalised polynomial ``E_k = e_k / C(n, k)`` is built one sample at a
    time through ``E_k(m) = (1 - k/m) E_k(m-1) + (k/m) x_m E_{k-1}(m-1)``,
    a convex combination of positive terms: no cancellation, no binomial
    overflow. The sample is rescaled by its maximum first.
    """
    xs = _sample(xs)
    n = xs.size
    if not (isinstance(k, (int, np.integer)) and 1 <= k <= n):
        raise BadK(f"need 1 <= k <= n={n}, got k={k!r}")
    if np.any(~(xs > 0)):
        raise NonpositiveInput("elementary symmetric mean needs positive values")
    scale = float(xs.max())
    y = xs / scale
    E = np.zeros(k + 1)
    E[0] = 1.0
    for m, ym in enumerate(y, start=1):
        top = min(k, m)
        j = np.arange(top, 0, -1)
        E[j] = (1.0 - j / m) * E[j] + (j / m) * ym * E[j - 1]
    return scale * float(E[k]) ** (1.0 / k)


def beta_type_mean(xs) -> float:
    """``(n * prod(x) / sum(x)) ** (1/(n-1))``, evaluated in logs."""
    xs = _sample(xs)
    n = xs.size
    if n < 2:
        raise SampleTooSmall("Beta-type mean needs at least two values")
    if np.any(~(xs > 0)):
        raise NonpositiveInput("Beta-type mean needs positive values")
    log_value = (math.log(n) + math.fsum(np.log(xs)) - math.log(math.fsum(xs))) / (n - 1)
    return math.exp(log_value)


def sublevel_set_roots(lambdas: Sequence[float], xs: Sequence[float]) -> tuple[float, float] | None:
    """Boundary points of ``{t : sum_i lambda_i D(x_i, t) <= 0}`` for ``D(x,t) = x(x-t) + x^2 - t^2``.

    The weighted sum equals ``-L t^2 - S1 t + 2 S2`` with ``L = sum lambda_i``,
    ``S1 = sum lambda_i x_i``, ``S2 = sum lambda_i x_i^2``. Its two real roots
    are returned in increasing order, or ``None`` if the discriminant is
    negative. When both roots are positive and ``L > 0`` the sublevel set is
    ``(0, t-] U [t+, inf)``, which is not an interval.
    """
    lam = [float(v) for v in lambdas]
    x = [float(v) for v in xs]
    if len(lam) != len(x):
        raise ValueError("lambdas and xs differ in length")
    L = math.fsum(lam)
    if L == 0:
        raise ZeroLeadingCoefficient("sum of lambdas is zero; the quadratic degenerates")
    S1 = math.fsum(l * v for l, v in zip(lam, x))
    S2 = math.fsum(l * v * v for l, v in zip(lam, x))
    a, b, c = -L, -S1, 2.0 * S2
    disc = math.fsum([b * b, -4.0 * a * c])
    if disc < 0:
        return None
    # cancellation-free pair: q = -(b + sign(b) sqrt(disc)) / 2, roots q/a and c/q
    sq = math.sqrt(disc)
    q = -0.5 * (b + math.copysign(sq, b))
    if q == 0.0:
        r1 = r2 = 0.0
    else:
        r1, r2 = q / a, c / q
    return (min(r1, r2), max(r1, r2))
