"""Reproducible random streams and experiment configuration."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ..population.distributions import DistributionSpec

_U64 = 1 << 64


def stream(seed: int, index: int) -> np.random.Generator:
    """Independent generator number ``index`` derived from ``seed``.

    Philox is counter based: the pair ``(index, seed)`` is packed into its
    128-bit key, so streams never overlap and any one of them can be
    rebuilt without generating the others.
    """
    if not 0 <= seed < _U64:
        raise ValueError("seed must be a 64-bit unsigned integer")
    if not 0 <= index < _U64:
        raise ValueError("stream index must be a 64-bit unsigned integer")
    return np.random.Generator(np.random.Philox(key=(index << 64) | seed))


def sample(dist: DistributionSpec, n: int, rng: np.random.Generator) -> np.ndarray:
    """``n`` i.i.d. draws of ``dist`` from ``rng``."""
    return dist.sample(rng, int(n))


@dataclass(frozen=True)
class ExperimentConfig:
    """Settings shared by the simulation experiments.

    Attributes:
        n_list: strictly increasing sample sizes.
        replications: number of independent replications.
        seed: 64-bit seed; replication ``r`` uses ``stream(seed, r)``.
        max_n: trajectory length for the iterated-logarithm experiment
            (defaults to ``n_list[-1]``).
        checkpoints: ``"dyadic"`` or an explicit increasing list of sample sizes.
        threads: worker threads; ``None`` means one per CPU. Results do not
            depend on it.
    """

    n_list: tuple[int, ...] = (1000,)
    replications: int = 1
    seed: int = 0
    max_n: int | None = None
    checkpoints: str | tuple[int, ...] = "dyadic"
    threads: int | None = None

    def __post_init__(self):
        n_list = tuple(int(n) for n in self.n_list)
        object.__setattr__(self, "n_list", n_list)
        if not n_list or n_list[0] < 1 or any(b <= a for a, b in zip(n_list, n_list[1:])):
            raise ValueError("n_list must be a nonempty strictly increasing list of positive sizes")
        if self.replications < 1:
            raise ValueError("replications must be at least 1")
        if not 0 <= self.seed < _U64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.threads is not None and self.threads < 1:
            raise ValueError("threads must be positive")
        if self.checkpoints != "dyadic":
            cps = tuple(int(n) for n in self.checkpoints)
            if not cps or any(b <= a for a, b in zip(cps, cps[1:])):
                raise ValueError("explicit checkpoints must be strictly increasing")
            object.__setattr__(self, "checkpoints", cps)

    @property
    def trajectory_length(self) -> int:
        return int(self.max_n) if self.max_n is not None else self.n_list[-1]


def run_replications(task: Callable[[int], object], replications: int, threads: int | None) -> list:
    """``[task(0), ..., task(replications - 1)]``, possibly computed concurrently."""
    if threads == 1 or replications == 1:
        return [task(r) for r in range(replications)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(task, range(replications)))


def geometric_checkpoints(lo: int, hi: int, ratio: float) -> tuple[int, ...]:
    """Distinct integers ``round(lo * ratio**k)`` up to and including ``hi``."""
    if lo < 3 or hi < lo or ratio <= 1:
        raise ValueError("need 3 <= lo <= hi and ratio > 1")
    k = np.arange(int(np.ceil(np.log(hi / lo) / np.log(ratio))) + 1)
    cps = np.unique(np.minimum(np.rint(lo * ratio**k), hi).astype(np.int64))
    return tuple(int(n) for n in cps)


def dyadic_checkpoints(hi: int) -> tuple[int, ...]:
    """``4, 8, 16, ...`` up to ``hi``; ``hi`` itself is appended when not a power of two."""
    cps = []
    n = 4
    while n <= hi:
        cps.append(n)
        n *= 2
    if hi >= 3 and (not cps or cps[-1] != hi):
        cps.append(hi)
    return tuple(cps)
