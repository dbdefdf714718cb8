"""Classical means as roots of a deviation sum.

A deviation D(x, t) vanishes on the diagonal and falls as t grows. The
deviation mean of a sample is the t where the deviations balance out.
Run with ``python3 demos/01_classical_means.py``.
"""

# %%
import numpy as np

from devmeans.core import (
    bajraktarevic_mean,
    beta_type_mean,
    check_deviation_axioms,
    deviation_mean,
    elementary_symmetric_mean,
    generators as g,
    linear,
    make_bajraktarevic_deviation,
    power,
    quadratic_example,
    quasi_arithmetic_mean,
    sublevel_set_roots,
)

xs = [1.0, 2.0, 4.0, 9.0]

# %% The linear deviation x - t recovers the arithmetic mean.
print("arithmetic :", deviation_mean(linear(), xs).root, "vs", np.mean(xs))

# %% Generated deviations p(x) (f(x) - f(t)) give quasi-arithmetic and Bajraktarevic means.
for f in (g.log(), g.reciprocal(), g.power(2)):
    D = make_bajraktarevic_deviation(f)
    print(f"{f.name:<11}:", deviation_mean(D, xs).root, "closed form", quasi_arithmetic_mean(f, xs))

D = make_bajraktarevic_deviation(g.identity(), g.weight_identity())
print("contraharmonic:", deviation_mean(D, xs).root, "closed form", bajraktarevic_mean(g.identity(), g.weight_identity(), xs))

# %% Nonlinear deviations have no closed form; the root finder reports how it got there.
for D in (power(2), power(0.5), quadratic_example()):
    r = deviation_mean(D, xs)
    print(f"{D.name:<18} root={r.root:.12f} bracket=({r.bracket_lo:.3g}, {r.bracket_hi:.3g}) iterations={r.iterations}")

# %% Axiom check on a grid: the quadratic example is a deviation on positive numbers.
grid = np.linspace(0.1, 10.0, 40)
print(check_deviation_axioms(quadratic_example(), grid, grid))

# %% Elementary symmetric means fall from the arithmetic mean (k = 1) to the geometric mean (k = n).
chain = [elementary_symmetric_mean(k, xs) for k in range(1, len(xs) + 1)]
print("Maclaurin chain:", np.round(chain, 6))

# %% Not every mean is a deviation mean: this one changes when the sample is repeated.
print("beta-type once  :", beta_type_mean([1, 2]))
print("beta-type twice :", beta_type_mean([1, 2, 1, 2]))

# %% A deviation whose sublevel sets are not intervals: two separate roots.
print("roots:", sublevel_set_roots((51.0, -50.0), (50.0, 101.0)))
