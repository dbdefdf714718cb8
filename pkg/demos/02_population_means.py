"""Population deviation means: the root of t -> E D(X, t).

Whether the expectation exists depends on t, so the library first probes
integrability and then solves on the interval where it holds.
"""

# %%
import math

from devmeans.core import exponential_kink, generators as g, power, quadratic_example
from devmeans.errors import NoRootInDomain
from devmeans.population import (
    argmin_oracle,
    expect_deviation,
    exponential,
    integrability_probe,
    inverse_quartic,
    lognormal,
    population_mean,
    quasi_arithmetic_expected_value,
    shifted_lognormal,
)

# %% Power deviation with p = 2 under Exp(1): E D(X, t) is piecewise in t.
D, law = power(2), exponential()
for t in (-1.0, 0.0, 0.5, 1.0, 2.0):
    print(f"g({t:+.1f}) = {expect_deviation(D, law, t):+.10f}")
res = population_mean(D, law)
print("root:", res.t0, "interior point:", res.interior_point)

# %% The same deviation under the density 3 x^-4 on [1, inf) has mean exactly 2.
print("inverse quartic:", population_mean(D, inverse_quartic()).t0)

# %% The quadratic example has a closed-form root, -1/2 + sqrt(17)/2.
print("quadratic example:", population_mean(quadratic_example(), law).t0, -0.5 + math.sqrt(4.25))

# %% The geometric mean of a lognormal law is e^mu.
print("E-ln mean of lognormal(0.4, 1):", quasi_arithmetic_expected_value(g.log(), lognormal(0.4, 1.0)), math.exp(0.4))

# %% Integrability can fail on part of the domain. For the kink deviation under a lognormal law:
kink = exponential_kink()
for t in (1.0, -1.0):
    print(f"t={t:+.0f}:", integrability_probe(kink, lognormal(), t).verdict)

# %% And a root may not exist at all.
try:
    population_mean(kink, shifted_lognormal())
except NoRootInDomain as exc:
    print("no root:", exc)

# %% Cross-check against the minimiser of the integrated objective.
print("argmin oracle:", argmin_oracle(D, law, [res.t0 - 0.5 + 0.05 * k for k in range(21)]))
