"""Constants governing the limit theorems.

sigma^2 = E D(X, t0)^2 / (E -d/dt D(X, t0))^2 is the CLT variance and its
square root the LIL constant; the large-deviation rate comes from
inf_c E exp(c D(X, x)).
"""

# %%
import math

from devmeans.asymptotics import asymptotic_constants, bajraktarevic_sigma2, cramer_gamma, ld_rate
from devmeans.core import generators as g, linear, make_bajraktarevic_deviation, power, quadratic_example, scaled
from devmeans.errors import Divergent
from devmeans.population import bernoulli, exponential, lognormal, normal

# %% CLT and LIL constants.
for D, law in ((linear(), exponential()), (power(2), exponential()), (quadratic_example(), exponential())):
    c = asymptotic_constants(D, law)
    print(f"{D.name:<18} t0={c.t0:.6f} sigma2={c.sigma2:.6f} lil_c={c.lil_c:.6f}")

# %% Multiplying D by a positive function of t changes neither the mean nor the constants.
S = scaled(power(2), lambda t: 1.0 + t * t, lambda t: 2.0 * t)
print("scaled sigma2:", asymptotic_constants(S, exponential()).sigma2)

# %% For generated deviations sigma^2 also has a direct formula.
f, p = g.log(), g.weight_identity()
print("direct :", bajraktarevic_sigma2(f, p, lognormal(0.0, 0.5)))
print("generic:", asymptotic_constants(make_bajraktarevic_deviation(f, p), lognormal(0.0, 0.5)).sigma2)

# %% Large deviations: for coin flips the rate is the binary KL divergence.
r = ld_rate(linear(), bernoulli(), 0.75)
kl = 0.75 * math.log(1.5) + 0.25 * math.log(0.5)
print(f"inf phi={r.inf_phi:.12f} c*={r.c_star:.9f} (ln 3 = {math.log(3):.9f}) gamma={r.gamma:.12f} KL={kl:.12f}")

# %% With D = x - t the rate is Cramer's: y^2/2 for a standard normal, y - 1 - ln y for Exp(1).
print("normal  :", cramer_gamma(normal(), 2.0))
print("expon.  :", cramer_gamma(exponential(), 3.0), 3 - 1 - math.log(3))

# %% When E exp(c D) is infinite for every c > 0 there is no exponential rate to report.
try:
    ld_rate(quadratic_example(), exponential(), 2.0)
except Divergent as exc:
    print("divergent:", exc)
