"""The limit theorems at desk scale, with seeded reproducible runs.

Each replication draws from its own counter-based stream, so results do
not depend on the number of worker threads.
"""

# %%
import math

import numpy as np

from devmeans.core import generators as g, linear, quadratic_example, quasi_arithmetic_deviation
from devmeans.montecarlo import (
    ExperimentConfig,
    geometric_checkpoints,
    run_clt,
    run_ld,
    run_lil,
    run_slln,
)
from devmeans.population import bernoulli, exponential, lognormal

# %% Strong law: the error shrinks roughly like 1/sqrt(n) along one growing sample.
rep = run_slln(quadratic_example(), exponential(), ExperimentConfig(n_list=(10**2, 10**3, 10**4, 10**5), replications=20, seed=1))
for n, e in zip(rep.n_list, rep.mean_abs_error):
    print(f"n={n:>6}  mean |M_n - t0| = {e:.5f}")

# %% Central limit theorem: standardized means against N(0, 1).
for D, law in ((linear(), exponential()), (quasi_arithmetic_deviation(g.log()), lognormal())):
    rep = run_clt(D, law, ExperimentConfig(n_list=(2000,), replications=2000, seed=1))
    z = np.array(rep.z)
    print(f"{law.name:<12} KS={rep.ks_stat:.4f} mean={z.mean():+.4f} var={z.var():.4f}")

# %% Iterated logarithm: the scaled path stays inside a band around +-C.
rep = run_lil(linear(), bernoulli(), ExperimentConfig(n_list=(10**6,), seed=1, checkpoints=geometric_checkpoints(1000, 10**6, 1.01)))
print(f"C={rep.lil_c}  running max={rep.running_max:.4f}  running min={rep.running_min:.4f}")

# %% Large deviations, computed exactly for a two-point law.
rep = run_ld(linear(), bernoulli(), 0.75, ExperimentConfig(n_list=(500,)))
for n in (1, 10, 100, 500):
    print(f"n={n:>3}  (1/n) ln P(M_n >= 0.75) = {rep.rate[n - 1]:.5f}")
print(f"sup over n = {rep.sup_rate:.5f}, limit = {rep.theory:.5f}, -KL = {-(0.75 * math.log(1.5) + 0.25 * math.log(0.5)):.5f}")
