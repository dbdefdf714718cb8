"""Finite-n check of the large-deviation rate of deviation means.

``M_n >= x`` holds exactly when ``S_n = sum_i D(X_i, x) >= 0``, so the event
is decided without computing any mean. For discrete laws the distribution of
``S_n`` is propagated exactly; otherwise frequencies are estimated.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from ..asymptotics.large_deviations import ld_rate
from ..core.deviations import Deviation
from ..errors import ExactModeUnavailable
from ..population.distributions import DISCRETE, DistributionSpec
from .sampling import ExperimentConfig, run_replications, sample, stream
from .stats import wilson_interval

MAX_EXACT_ATOMS = 12
MAX_EXACT_STATES = 4_000_000
TIE_RTOL = 1e-12


@dataclass(frozen=True)
class LdReport:
    """Estimates of ``(1/n) ln P(M_n >= x)``.

    In exact mode ``n_list`` is ``1..max_n`` and ``ci_lower``/``ci_upper``
    equal ``prob``; otherwise they are 95% Wilson bounds.
    """

    x: float
    exact: bool
    n_list: tuple[int, ...]
    prob: tuple[float, ...]
    log_prob: tuple[float, ...]
    rate: tuple[float, ...]
    ci_lower: tuple[float, ...]
    ci_upper: tuple[float, ...]
    sup_rate: float
    theory: float
    seed: int


def exact_tail_log_probs(values, probs, max_n: int) -> np.ndarray:
    """``ln P(v_1 + ... + v_n >= 0)`` for ``n = 1..max_n`` with i.i.d. ``v_i``.

    The law of the partial sum is carried as (support point, log-weight)
    pairs; sums equal up to a relative ``1e-12`` are merged, which keeps
    lattice-valued problems at ``O(n)`` states. Working with log-weights is
    what keeps ``n`` in the hundreds from underflowing.

    Raises:
        ExactModeUnavailable: the number of support points would exceed
            ``MAX_EXACT_STATES``.
    """
    d = np.asarray(values, dtype=float)
    lp = np.log(np.asarray(probs, dtype=float))
    scale = float(np.max(np.abs(d))) or 1.0
    support = np.zeros(1)
    logw = np.zeros(1)
    out = np.empty(max_n)
    for n in range(1, max_n + 1):
        if support.size * d.size > MAX_EXACT_STATES:
            raise ExactModeUnavailable(f"exact law of the sum needs more than {MAX_EXACT_STATES} states at n={n}")
        s = (support[:, None] + d[None, :]).ravel()
        w = (logw[:, None] + lp[None, :]).ravel()
        order = np.argsort(s, kind="stable")
        s, w = s[order], w[order]
        tol = TIE_RTOL * scale * n
        starts = np.concatenate(([0], np.flatnonzero(np.diff(s) > tol) + 1))
        support = s[starts]
        logw = np.logaddexp.reduceat(w, starts)
        # renormalise so the total mass stays exactly one in log space
        logw -= logsumexp(logw)
        hit = support >= -tol
        out[n - 1] = logsumexp(logw[hit]) if hit.any() else -math.inf
    return np.minimum(out, 0.0)


def run_ld(D: Deviation, dist: DistributionSpec, x: float, cfg: ExperimentConfig) -> LdReport:
    """Exact or simulated ``(1/n) ln P(M_n >= x)`` next to ``ln inf_c E exp(c D(X, x))``.

    Discrete laws with at most 12 atoms are handled exactly for every
    ``n <= cfg.trajectory_length``. Other laws, or exact runs whose state
    space grows too large, fall back to ``cfg.replications`` simulated
    samples per ``n`` in ``cfg.n_list`` with an :class:`ExactModeUnavailable`
    warning.

    Raises:
        NotBeyondMean: propagated from :func:`ld_rate` when ``x`` is not above the mean.
    """
    theory = math.log(ld_rate(D, dist, x).inf_phi)
    x = float(x)
    if dist.kind == DISCRETE and len(dist.atoms) <= MAX_EXACT_ATOMS:
        values = [float(D.eval(a, x)) for a in dist.atoms]
        try:
            lp = exact_tail_log_probs(values, dist.probs, cfg.trajectory_length)
        except ExactModeUnavailable as exc:
            warnings.warn(str(exc), ExactModeUnavailable, stacklevel=2)
        else:
            ns = np.arange(1, lp.size + 1)
            prob = np.exp(lp)
            rate = lp / ns
            return LdReport(
                x, True, tuple(int(n) for n in ns), tuple(prob.tolist()), tuple(lp.tolist()),
                tuple(rate.tolist()), tuple(prob.tolist()), tuple(prob.tolist()),
                float(np.max(rate)), theory, cfg.seed,
            )
    else:
        warnings.warn(
            f"no exact tail computation for {dist.name}; using {cfg.replications} simulated samples per n",
            ExactModeUnavailable,
            stacklevel=2,
        )
    return _empirical(D, dist, x, cfg, theory)


def _empirical(D: Deviation, dist: DistributionSpec, x: float, cfg: ExperimentConfig, theory: float) -> LdReport:
    sizes = cfg.n_list

    def one(r):
        xs = sample(dist, sizes[-1], stream(cfg.seed, r))
        csum = np.cumsum(D.eval(xs, x))
        return tuple(bool(csum[n - 1] >= 0.0) for n in sizes)

    hits = np.array(run_replications(one, cfg.replications, cfg.threads)).sum(axis=0)
    prob, lp, rate, lo, hi = [], [], [], [], []
    for n, k in zip(sizes, hits):
        p = k / cfg.replications
        a, b = wilson_interval(int(k), cfg.replications)
        prob.append(p)
        lp.append(math.log(p) if p > 0 else -math.inf)
        rate.append(lp[-1] / n)
        lo.append(a)
        hi.append(b)
    return LdReport(
        x, False, sizes, tuple(prob), tuple(lp), tuple(rate), tuple(lo), tuple(hi),
        max(rate), theory, cfg.seed,
    )
