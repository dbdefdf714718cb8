import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate, optimize, stats

from devmeans.core import (
    Interval,
    deviation_mean,
    exponential_kink,
    generators as g,
    linear,
    make_bajraktarevic_deviation,
    power,
    quadratic_example,
    quasi_arithmetic_deviation,
)
from devmeans.errors import (
    Divergent,
    NoRootInDomain,
    QuadratureBudgetExceeded,
    SamplerOnlyUnsupported,
)
from devmeans.population import (
    DIVERGING,
    FINITE,
    argmin_oracle,
    bajraktarevic_expected_value,
    expect,
    expect_deviation,
    integrability_probe,
    integrate_density,
    population_mean,
    quasi_arithmetic_expected_value,
)
from devmeans.population import distributions as dists

# root of 4 e^-t = (1 - t)^2 + 1, frozen from scipy.optimize.brentq
EXP_QUADRATIC_ROOT = 1.3000752425985869


def test_frozen_root_oracle():
    ref = optimize.brentq(lambda t: 4 * math.exp(-t) - (1 - t) ** 2 - 1, 0.5, 2.0, xtol=1e-15)
    assert ref == pytest.approx(EXP_QUADRATIC_ROOT, abs=1e-14)


# -- distributions ---------------------------------------------------------------

DENSITY_PRESETS = [
    dists.exponential(),
    dists.exponential(2.5),
    dists.inverse_quartic(),
    dists.lognormal(),
    dists.lognormal(0.3, 0.5),
    dists.shifted_lognormal(),
    dists.uniform(-1.0, 3.0),
    dists.normal(1.0, 2.0),
    dists.truncated_normal(0.0, 1.0, -1.0, 2.0),
]


@pytest.mark.parametrize("dist", DENSITY_PRESETS, ids=repr)
def test_density_presets_have_unit_mass(dist):
    assert dist.total_mass() == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("dist", DENSITY_PRESETS, ids=repr)
def test_samples_lie_in_support_and_match_cdf(dist):
    xs = dist.sample(np.random.default_rng(3), 4000)
    assert dist.support.contains(xs)
    cdf = np.vectorize(dist.cdf)
    assert stats.kstest(xs, cdf).pvalue > 1e-4


@pytest.mark.parametrize("dist", DENSITY_PRESETS, ids=repr)
def test_quantile_inverts_cdf(dist):
    for q in (0.01, 0.3, 0.5, 0.9):
        assert dist.cdf(dist.ppf(q)) == pytest.approx(q, abs=1e-10)


@pytest.mark.parametrize("dist", DENSITY_PRESETS, ids=repr)
def test_listed_moments_match_quadrature(dist):
    for k, m in dist.moments.items():
        if k <= 4:
            assert expect(lambda x: x**k, dist) == pytest.approx(m, rel=1e-8)


def test_discrete_validation():
    with pytest.raises(ValueError):
        dists.discrete([1.0, 2.0], [0.5, 0.6])
    with pytest.raises(ValueError):
        dists.discrete([1.0, 2.0], [1.0, 0.0])
    d = dists.discrete([3.0, 1.0, 3.0])
    assert d.atoms == (1.0, 3.0) and d.probs == pytest.approx((1 / 3, 2 / 3))


def test_discrete_and_pointmass_sampling():
    rng = np.random.default_rng(0)
    assert dists.pointmass(2.5).sample(rng, 5).tolist() == [2.5] * 5
    xs = dists.discrete([1.0, 2.0, 7.0], [0.2, 0.3, 0.5]).sample(rng, 20000)
    assert set(np.unique(xs)) <= {1.0, 2.0, 7.0}
    assert np.mean(xs == 7.0) == pytest.approx(0.5, abs=0.02)


# -- expectations ------------------------------------------------------------------


def test_expect_examples():
    assert expect(lambda x: x, dists.exponential()) == pytest.approx(1.0, abs=1e-10)
    assert expect(lambda x: x * x, dists.inverse_quartic()) == pytest.approx(3.0, abs=1e-9)
    val, _ = integrate_density(lambda x: math.exp((x - 2.0) ** 2), dists.lognormal(), hi=2.0)
    assert val == pytest.approx(6.55323, abs=5e-4)
    assert expect(lambda x: x, dists.discrete([1.0, 3.0])) == 2.0


def test_shifted_lognormal_integrals_against_independent_quadrature():
    pdf = lambda x: math.exp(-0.5 * math.log(x) ** 2) / (math.sqrt(2 * math.pi) * x)  # noqa: E731
    left = integrate.quad(lambda x: math.exp((x - 2) ** 2) * pdf(x), 0, 2, epsabs=1e-13, limit=200)[0]
    right = integrate.quad(lambda x: math.exp(-((x - 2) ** 2)) * pdf(x), 2, np.inf, epsabs=1e-13, limit=200)[0]
    sl = dists.shifted_lognormal()
    assert integrate_density(lambda x: math.exp(x * x), sl, hi=0.0)[0] == pytest.approx(left, rel=1e-9)
    assert integrate_density(lambda x: math.exp(-x * x), sl, lo=0.0)[0] == pytest.approx(right, rel=1e-9)


def test_sampler_only_rejects_quadrature():
    d = dists.sampler_only(lambda rng, n: rng.random(n))
    with pytest.raises(SamplerOnlyUnsupported):
        expect(lambda x: x, d)


def test_infinite_moment_is_reported():
    with pytest.raises((Divergent, QuadratureBudgetExceeded)):
        expect(lambda x: x**3, dists.inverse_quartic())


def test_budget_error_carries_estimate():
    # oscillates infinitely often near 0; the default budget cannot resolve it
    with pytest.raises(QuadratureBudgetExceeded) as info:
        expect(lambda x: math.sin(1.0 / x) / x, dists.uniform(0.0, 1.0))
    assert math.isfinite(info.value.estimate) and info.value.error > 0


def test_expect_deviation_examples():
    e = dists.exponential()
    assert expect_deviation(linear(), e, 0.5) == pytest.approx(0.5, abs=1e-10)
    assert expect_deviation(power(2), e, 0.0) == pytest.approx(2.0, abs=1e-10)
    assert expect_deviation(power(2), e, 1.0) == pytest.approx(4 / math.e - 1, abs=1e-10)
    for t in (-1.0, 0.5, 2.0):
        closed = (t - 1) ** 2 + 1 if t <= 0 else 4 * math.exp(-t) - (1 - t) ** 2 - 1
        assert expect_deviation(power(2), e, t) == pytest.approx(closed, abs=1e-8)


def test_expect_deviation_refuses_divergent_point():
    with pytest.raises(Divergent):
        expect_deviation(exponential_kink(), dists.lognormal(), -1.0)


MONOTONE_CASES = [
    (linear(), dists.normal()),
    (power(2), dists.exponential()),
    (power(0.5), dists.lognormal()),
    (quadratic_example(), dists.exponential()),
    (exponential_kink(), dists.lognormal()),
    (quasi_arithmetic_deviation(g.log()), dists.lognormal()),
]


@pytest.mark.parametrize("D,dist", MONOTONE_CASES, ids=lambda v: getattr(v, "name", None))
def test_g_strictly_decreasing(D, dist):
    lo = max(0.05, dist.ppf(0.05)) if D.domain.lo >= 0 or D is MONOTONE_CASES[4][0] else dist.ppf(0.05)
    ts = np.linspace(lo, dist.ppf(0.95), 12)
    vals = [expect_deviation(D, dist, float(t)) for t in ts]
    assert all(b < a for a, b in zip(vals, vals[1:]))


# -- integrability -----------------------------------------------------------------


def test_probe_examples():
    kink, ln = exponential_kink(), dists.lognormal()
    assert integrability_probe(kink, ln, 1.0).verdict == FINITE
    assert integrability_probe(kink, ln, -1.0).verdict == DIVERGING
    assert integrability_probe(linear(), dists.uniform(0, 1), 0.3).verdict == FINITE
    assert integrability_probe(linear(), dists.truncated_normal(), 5.0).ok


def test_probe_truncated_values_are_monotone():
    p = integrability_probe(power(2), dists.exponential(), 1.0)
    vals = p.truncated_values
    assert len(vals) > 3
    assert all(b >= a for a, b in zip(vals, vals[1:]))


# -- population mean ---------------------------------------------------------------


def test_population_mean_examples():
    r = population_mean(power(2), dists.exponential())
    assert r.t0 == pytest.approx(EXP_QUADRATIC_ROOT, abs=1e-10)
    assert r.interior_point and r.residual < 1e-10
    assert population_mean(power(2), dists.inverse_quartic()).t0 == pytest.approx(2.0, abs=1e-8)
    with pytest.raises(NoRootInDomain):
        population_mean(exponential_kink(), dists.shifted_lognormal())


def test_quadratic_example_closed_form():
    t0 = -0.5 + math.sqrt(0.25 + 4.0)
    assert population_mean(quadratic_example(), dists.exponential()).t0 == pytest.approx(t0, abs=1e-10)


def test_search_interval_without_root():
    with pytest.raises(NoRootInDomain):
        population_mean(linear(), dists.exponential(), search=Interval.closed(2.0, 5.0))


def test_point_mass_cases():
    r = population_mean(linear(), dists.pointmass(1.7))
    assert r.t0 == 1.7
    boundary = population_mean(linear(Interval.closed(0.0, 1.0)), dists.pointmass(0.0, Interval.closed(0.0, 1.0)))
    assert boundary.t0 == 0.0
    assert not boundary.interior_point and boundary.diagnostic


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 400).map(lambda k: k / 40), min_size=1, max_size=8))
def test_discrete_law_matches_sample_mean(xs):
    law = dists.discrete(xs)
    # duplicates merge into heavier atoms, so compare against the sample itself
    for D in (linear(), power(2), quadratic_example()):
        assert population_mean(D, law).t0 == pytest.approx(deviation_mean(D, xs).root, abs=1e-9)


def test_uniform_discrete_atoms():
    xs = [1.0, 2.0, 7.0]
    for D in (power(2), quadratic_example(), power(0.5)):
        assert population_mean(D, dists.discrete(xs)).t0 == pytest.approx(deviation_mean(D, xs).root, abs=1e-9)


BAJ_CASES = [
    (g.identity(), g.weight_one(), dists.exponential()),
    (g.identity(), g.weight_identity(), dists.exponential()),
    (g.log(), g.weight_one(), dists.lognormal()),
    (g.log(), g.weight_identity(), dists.lognormal(0.0, 0.5)),
    (g.power(2), g.weight_one(), dists.inverse_quartic()),
    (g.power(-1), g.weight_power(2), dists.uniform(0.5, 3.0)),
    (g.exp(), g.weight_one(), dists.truncated_normal(0.0, 1.0, -1.0, 2.0)),
    (g.power(3), g.weight_identity(), dists.discrete([0.5, 1.0, 4.0], [0.2, 0.5, 0.3])),
]


@pytest.mark.parametrize("f,p,dist", BAJ_CASES, ids=lambda v: getattr(v, "name", None))
def test_bajraktarevic_reduction(f, p, dist):
    t0 = population_mean(make_bajraktarevic_deviation(f, p), dist).t0
    assert t0 == pytest.approx(bajraktarevic_expected_value(f, p, dist), abs=1e-8)


@pytest.mark.parametrize("f,p,dist", BAJ_CASES, ids=lambda v: getattr(v, "name", None))
def test_expected_generator_value_lies_in_image(f, p, dist):
    num = expect(lambda x: p(x) * f(x), dist)
    den = expect(lambda x: p(x), dist)
    assert f.image.contains(num / den)


def test_expected_value_examples():
    e = dists.exponential()
    assert quasi_arithmetic_expected_value(g.identity(), e) == pytest.approx(1.0, abs=1e-10)
    assert quasi_arithmetic_expected_value(g.log(), dists.lognormal()) == pytest.approx(1.0, abs=1e-10)
    assert quasi_arithmetic_expected_value(g.power(2), dists.inverse_quartic()) == pytest.approx(math.sqrt(3), abs=1e-9)
    assert bajraktarevic_expected_value(g.identity(), g.weight_identity(), e) == pytest.approx(2.0, abs=1e-10)
    assert bajraktarevic_expected_value(g.identity(), g.weight_one(), dists.discrete([1.0, 3.0])) == 2.0
    assert bajraktarevic_expected_value(g.log(), g.weight_one(), dists.lognormal()) == pytest.approx(
        quasi_arithmetic_expected_value(g.log(), dists.lognormal()), abs=1e-12
    )


def test_quasi_arithmetic_divergence():
    # E exp(X) for a lognormal law: the tail blows up, the probe says so
    with pytest.raises(Divergent):
        quasi_arithmetic_expected_value(g.exp(), dists.lognormal())
    # E X^3 for density 3 x^-4 grows only logarithmically: reported, but not as Divergent
    with pytest.raises((Divergent, QuadratureBudgetExceeded)):
        quasi_arithmetic_expected_value(g.power(3), dists.inverse_quartic())


# -- argmin oracle -----------------------------------------------------------------


def test_argmin_oracle_on_samples():
    assert argmin_oracle(linear(), [1.0, 2.0, 3.0], np.linspace(0, 4, 41)) == pytest.approx(2.0, abs=1e-6)
    assert argmin_oracle(power(2), [0.4, 0.4], np.linspace(0, 1, 11)) == 0.4
    xs = [0.3, 1.1, 2.9, 4.0]
    for D in (power(2), quadratic_example(), power(0.5)):
        ref = deviation_mean(D, xs).root
        assert argmin_oracle(D, xs, np.linspace(0.2, 4.1, 40)) == pytest.approx(ref, abs=1e-4)


ORACLE_CASES = [
    (power(2), dists.exponential()),
    (power(2), dists.inverse_quartic()),
    (linear(), dists.lognormal()),
    (linear(), dists.normal(1.0, 2.0)),
    (quadratic_example(), dists.exponential()),
    (power(0.5), dists.uniform(0.0, 2.0)),
    (exponential_kink(), dists.lognormal()),
    (quasi_arithmetic_deviation(g.log()), dists.lognormal(0.2, 0.7)),
    (power(3), dists.truncated_normal(0.0, 1.0, -1.0, 2.0)),
    (power(2), dists.discrete([1.0, 2.0, 7.0], [0.5, 0.25, 0.25])),
]


@pytest.mark.parametrize("D,dist", ORACLE_CASES, ids=lambda v: getattr(v, "name", None))
def test_argmin_oracle_agrees_with_population_mean(D, dist):
    t0 = population_mean(D, dist).t0
    lo = max(t0 - 1.0, D.domain.lo + 1e-3, 0.0 if D is ORACLE_CASES[6][0] else -math.inf)
    grid = np.linspace(lo, t0 + 1.0, 25)
    assert argmin_oracle(D, dist, grid) == pytest.approx(t0, abs=1e-4)
