"""Generators and weights for quasi-arithmetic and Bajraktarevic means.

A generator carries its inverse explicitly; nothing here inverts a function
numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .interval import Interval


@dataclass(frozen=True)
class Generator:
    """A continuous strictly monotone function together with its inverse.

    ``image`` is ``f(domain)``; it is what expected values of ``f`` must land
    in before they can be inverted.
    """

    name: str
    f: Callable
    inverse: Callable
    domain: Interval
    image: Interval
    increasing: bool = True
    derivative: Callable | None = None

    def __call__(self, x):
        return self.f(x)


@dataclass(frozen=True)
class Weight:
    name: str
    p: Callable
    domain: Interval = Interval()

    def __call__(self, x):
        return self.p(x)


def identity() -> Generator:
    return Generator(
        "identity",
        f=lambda x: x,
        inverse=lambda y: y,
        domain=Interval(),
        image=Interval(),
        derivative=lambda x: np.ones_like(np.asarray(x, dtype=float))[()],
    )


def affine(a: float, b: float = 0.0) -> Generator:
    if a == 0:
        raise ValueError("affine generator needs a != 0")
    return Generator(
        f"affine({a},{b})",
        f=lambda x: a * x + b,
        inverse=lambda y: (y - b) / a,
        domain=Interval(),
        image=Interval(),
        increasing=a > 0,
        derivative=lambda x: a * np.ones_like(np.asarray(x, dtype=float))[()],
    )


def log() -> Generator:
    return Generator(
        "ln",
        f=np.log,
        inverse=np.exp,
        domain=Interval.positive(),
        image=Interval(),
        derivative=lambda x: 1.0 / np.asarray(x, dtype=float),
    )


def exp() -> Generator:
    return Generator(
        "exp",
        f=np.exp,
        inverse=np.log,
        domain=Interval(),
        image=Interval.positive(),
        derivative=np.exp,
    )


def power(r: float) -> Generator:
    """``x**r`` on the positive half-line; decreasing for negative ``r``.

    ``r = 0`` is rejected; use :func:`log`, which generates the same mean.
    """
    if r == 0:
        raise ValueError("power generator needs r != 0; use log() for the geometric mean")
    return Generator(
        f"power({r})",
        f=lambda x: np.power(x, r),
        inverse=lambda y: np.power(y, 1.0 / r),
        domain=Interval.positive(),
        image=Interval.positive(),
        increasing=r > 0,
        derivative=lambda x: r * np.power(x, r - 1.0),
    )


def reciprocal() -> Generator:
    return power(-1.0)


def weight_one() -> Weight:
    return Weight("one", lambda x: np.ones_like(np.asarray(x, dtype=float))[()])


def weight_identity() -> Weight:
    return Weight("identity", lambda x: np.asarray(x, dtype=float)[()], Interval.positive())


def weight_power(r: float) -> Weight:
    return Weight(f"power({r})", lambda x: np.power(x, r), Interval.positive())


GENERATORS = {
    "identity": identity,
    "ln": log,
    "log": log,
    "exp": exp,
    "power": power,
    "reciprocal": reciprocal,
    "affine": affine,
}

WEIGHTS = {
    "one": weight_one,
    "identity": weight_identity,
    "power": weight_power,
}


def image_contains(g: Generator, y: float) -> bool:
    """Membership of ``y`` in ``f(domain)`` (open ends count as excluded)."""
    return math.isfinite(y) and g.image.contains(y)
