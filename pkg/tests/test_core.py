import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from devmeans.core import (
    Deviation,
    Interval,
    bajraktarevic_mean,
    beta_type_mean,
    check_deviation_axioms,
    deviation_mean,
    elementary_symmetric_mean,
    exponential_kink,
    generators as g,
    linear,
    make_bajraktarevic_deviation,
    power,
    quadratic_example,
    quasi_arithmetic_deviation,
    quasi_arithmetic_mean,
    scaled,
    sublevel_set_roots,
)
from devmeans.core.interval import chebyshev_grid
from devmeans.core.roots import RESIDUAL_TOL
from devmeans.errors import (
    BadK,
    DomainViolation,
    EmptySample,
    GridOutsideDomain,
    NonpositiveInput,
    NonpositiveWeight,
    SampleTooSmall,
    ZeroLeadingCoefficient,
)

positive = st.floats(0.05, 50.0, allow_nan=False)
reals = st.floats(-100.0, 100.0, allow_nan=False)


# -- intervals ----------------------------------------------------------------


def test_interval_membership_and_windows():
    pos = Interval.positive()
    assert 1.0 in pos and 0.0 not in pos and -1.0 not in pos
    assert pos.contains(np.array([0.5, 2.0]))
    assert not pos.contains(np.array([0.5, 0.0]))
    lo, hi = pos.finite_window()
    assert 0.0 < lo < hi < math.inf
    closed = Interval.closed(0.0, 1.0)
    assert 0.0 in closed and 1.0 in closed
    assert not closed.interior_contains(1.0)
    assert str(closed) == "[0.0, 1.0]"
    with pytest.raises(ValueError):
        Interval(1.0, 1.0)


def test_chebyshev_grid_is_increasing_and_inside():
    grid = chebyshev_grid(-1.0, 3.0, 64)
    assert grid.size == 64
    assert np.all(np.diff(grid) > 0)
    assert grid[0] > -1.0 and grid[-1] < 3.0


# -- axioms -------------------------------------------------------------------


def test_linear_passes_axioms():
    r = check_deviation_axioms(linear())
    assert r.passed and r.monotone_violations == 0 and r.diagonal_max_abs == 0.0


def test_quadratic_example_passes_on_positive_grids():
    grid = np.linspace(0.01, 10.0, 50)
    assert check_deviation_axioms(quadratic_example(), grid, grid).passed


def test_flipped_sign_fails_axioms():
    flipped = Deviation(Interval(), lambda x, t: np.subtract(t, x), name="t-x")
    r = check_deviation_axioms(flipped)
    assert r.monotone_violations > 0 and not r.passed


def test_constant_row_counts_as_violation():
    # exact ties violate the strict axiom
    flat = Deviation(Interval(), lambda x, t: np.where(np.asarray(x) > 0, 0.0 * np.asarray(t), np.subtract(x, t)))
    assert check_deviation_axioms(flat).monotone_violations > 0


def test_grid_outside_domain_raises():
    with pytest.raises(GridOutsideDomain):
        check_deviation_axioms(quadratic_example(), [1.0, 2.0], [-1.0, 1.0, 2.0])


def test_generator_deviations_pass_axioms():
    for f in (g.identity(), g.log(), g.exp(), g.power(2), g.power(-1), g.reciprocal()):
        D = quasi_arithmetic_deviation(f)
        lo, hi = D.domain.finite_window(half_width=5.0)
        grid = np.linspace(lo, hi, 30)
        assert check_deviation_axioms(D, grid, grid).passed, f.name


# -- deviation_mean -------------------------------------------------------------


def test_deviation_mean_examples():
    assert deviation_mean(linear(), [1, 2, 3]).root == pytest.approx(2.0, abs=1e-12)
    assert deviation_mean(power(2), [1, 3]).root == pytest.approx(2.0, abs=1e-12)
    assert deviation_mean(quadratic_example(), [1, 2]).root == pytest.approx(-0.75 + math.sqrt(5.5625), abs=1e-12)


def test_all_equal_sample_short_circuits():
    r = deviation_mean(quadratic_example(), [0.7, 0.7, 0.7])
    assert r.root == 0.7 and r.iterations == 0


def test_deviation_mean_errors():
    with pytest.raises(EmptySample):
        deviation_mean(linear(), [])
    with pytest.raises(DomainViolation):
        deviation_mean(quadratic_example(), [1.0, -1.0])


def test_exponential_kink_sample_mean():
    D = exponential_kink()
    xs = [-1.5, 0.0, 0.4, 3.0]
    r = deviation_mean(D, xs)
    assert min(xs) < r.root < max(xs)
    assert abs(float(np.sum(D.eval(np.array(xs), r.root)))) < 1e-9


# dyadic grid: keeps powers of differences out of the subnormal range
samples = st.lists(st.integers(-20 * 1024, 20 * 1024).map(lambda k: k / 1024), min_size=1, max_size=12)
raw_samples = st.lists(st.floats(-1e6, 1e6, allow_nan=False), min_size=1, max_size=12)
DEVIATIONS = [linear(), power(0.5), power(2.0), power(3.0)]


@settings(max_examples=150, deadline=None)
@given(samples, st.sampled_from(DEVIATIONS))
def test_bounds_and_residual(xs, D):
    r = deviation_mean(D, xs)
    lo, hi = min(xs), max(xs)
    assert lo <= r.root <= hi
    if lo < hi:
        assert lo < r.root < hi
        arr = np.array(xs)
        scale = float(np.sum(np.abs(D.eval(arr, lo))))
        assert abs(float(np.sum(D.eval(arr, r.root)))) <= RESIDUAL_TOL * scale


@settings(max_examples=150, deadline=None)
@given(raw_samples)
def test_linear_bounds_on_raw_floats(xs):
    r = deviation_mean(linear(), xs)
    if min(xs) < max(xs):
        assert min(xs) < r.root < max(xs)
    else:
        assert r.root == xs[0]


@settings(max_examples=100, deadline=None)
@given(samples, st.randoms(use_true_random=False))
def test_permutation_invariance_is_exact(xs, rnd):
    ys = list(xs)
    rnd.shuffle(ys)
    for D in DEVIATIONS:
        assert deviation_mean(D, xs).root == deviation_mean(D, ys).root


@settings(max_examples=100, deadline=None)
@given(samples, st.integers(2, 5))
def test_repetition_invariance(xs, k):
    for D in DEVIATIONS:
        a = deviation_mean(D, xs).root
        b = deviation_mean(D, xs * k).root
        assert b == pytest.approx(a, abs=1e-10 * (1 + abs(a)))


@settings(max_examples=100, deadline=None)
@given(st.lists(positive, min_size=1, max_size=10))
def test_generator_scaling_leaves_mean_unchanged(xs):
    d = lambda t: 1.0 + np.square(t)  # noqa: E731
    for D in (linear(), quadratic_example(), power(2.0)):
        a = deviation_mean(D, xs).root
        b = deviation_mean(scaled(D, d), xs).root
        assert b == pytest.approx(a, abs=1e-9)


def _grid_oracle(D, xs, n=10**6):
    grid = np.linspace(min(xs), max(xs), n)
    total = np.zeros(n)
    for x in xs:
        total += D.eval(x, grid)
    idx = int(np.argmax(total <= 0))
    return grid[idx], grid[1] - grid[0]


def test_matches_brute_force_grid_scan():
    rng = np.random.default_rng(20260101)
    Ds = [linear(), power(2.0), power(0.5), quadratic_example()]
    for i in range(200):
        n = int(rng.integers(2, 7))
        xs = (rng.integers(1, 41, size=n) / 4.0).tolist()  # coarse rational grid in (0, 10]
        if min(xs) == max(xs):
            xs[0] += 0.25
        D = Ds[i % len(Ds)]
        t_grid, step = _grid_oracle(D, xs)
        assert abs(deviation_mean(D, xs).root - t_grid) <= 2 * step


# -- closed-form means ----------------------------------------------------------


def test_quasi_arithmetic_examples():
    assert quasi_arithmetic_mean(g.identity(), [2, 4, 9]) == pytest.approx(5.0)
    assert quasi_arithmetic_mean(g.log(), [1, 4]) == pytest.approx(2.0)
    assert quasi_arithmetic_mean(g.reciprocal(), [1, 2]) == pytest.approx(4.0 / 3.0)
    with pytest.raises(DomainViolation):
        quasi_arithmetic_mean(g.log(), [1.0, -2.0])


def test_bajraktarevic_examples():
    assert bajraktarevic_mean(g.identity(), g.weight_one(), [1, 2, 3]) == pytest.approx(2.0)
    assert bajraktarevic_mean(g.identity(), g.weight_identity(), [1, 3]) == pytest.approx(2.5)
    assert bajraktarevic_mean(g.log(), g.weight_power(3), [1.7] * 4) == 1.7
    with pytest.raises(NonpositiveWeight):
        bajraktarevic_mean(g.identity(), g.weight_identity(), [-1.0, 2.0])


def test_bajraktarevic_deviation_examples():
    D = make_bajraktarevic_deviation(g.identity(), g.weight_one())
    assert D.eval(3.0, 1.0) == 2.0 and D.eval(-1.0, 2.0) == -3.0
    assert deviation_mean(make_bajraktarevic_deviation(g.log()), [1, 4]).root == pytest.approx(2.0, abs=1e-12)
    D = make_bajraktarevic_deviation(g.identity(), g.weight_identity())
    assert deviation_mean(D, [1, 3]).root == pytest.approx(2.5, abs=1e-12)


GEN_WEIGHTS = [
    (g.identity(), g.weight_one()),
    (g.log(), g.weight_one()),
    (g.log(), g.weight_identity()),
    (g.power(2), g.weight_identity()),
    (g.power(-1), g.weight_power(0.5)),
    (g.exp(), g.weight_power(2)),
    (g.affine(-2.0, 1.0), g.weight_one()),
]


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(0.1, 5.0), min_size=1, max_size=10), st.sampled_from(GEN_WEIGHTS))
def test_bajraktarevic_consistency(xs, fp):
    f, p = fp
    via_root = deviation_mean(make_bajraktarevic_deviation(f, p), xs).root
    assert via_root == pytest.approx(bajraktarevic_mean(f, p, xs), abs=1e-9)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(0.1, 5.0), min_size=1, max_size=10))
def test_quasi_arithmetic_lies_in_range(xs):
    for f in (g.log(), g.exp(), g.power(3), g.reciprocal()):
        m = quasi_arithmetic_mean(f, xs)
        assert min(xs) <= m <= max(xs)


def test_elementary_symmetric_examples():
    assert elementary_symmetric_mean(1, [2, 4, 9]) == pytest.approx(5.0)
    assert elementary_symmetric_mean(2, [1, 4]) == pytest.approx(2.0)
    assert elementary_symmetric_mean(2, [1, 2, 3]) == pytest.approx(math.sqrt(11.0 / 3.0), rel=1e-14)
    with pytest.raises(BadK):
        elementary_symmetric_mean(3, [1, 2])
    with pytest.raises(BadK):
        elementary_symmetric_mean(0, [1, 2])
    with pytest.raises(NonpositiveInput):
        elementary_symmetric_mean(1, [1, 0])


def _esm_exact(k, xs):
    # exact rational e_k by expanding prod (1 + x z); independent of the recurrence
    coeffs = [Fraction(1)]
    for x in xs:
        fx = Fraction(x)
        coeffs = [a + fx * b for a, b in zip(coeffs + [Fraction(0)], [Fraction(0)] + coeffs)]
    return (coeffs[k] / math.comb(len(xs), k)) ** (1.0 / k)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(0.01, 100.0), min_size=1, max_size=8), st.data())
def test_elementary_symmetric_matches_exact_expansion(xs, data):
    k = data.draw(st.integers(1, len(xs)))
    assert elementary_symmetric_mean(k, xs) == pytest.approx(float(_esm_exact(k, xs)), rel=1e-12)


def test_maclaurin_chain_on_random_samples():
    rng = np.random.default_rng(7)
    for _ in range(100):
        xs = rng.uniform(0.01, 10.0, size=int(rng.integers(2, 12)))
        chain = [elementary_symmetric_mean(k, xs) for k in range(1, xs.size + 1)]
        assert all(b <= a * (1 + 1e-12) for a, b in zip(chain, chain[1:]))
        assert chain[0] == pytest.approx(float(np.mean(xs)))
        assert chain[-1] == pytest.approx(float(np.exp(np.mean(np.log(xs)))))


def test_elementary_symmetric_survives_extreme_scales():
    xs = [1e-200, 1e-180, 1e150]
    assert math.isfinite(elementary_symmetric_mean(3, xs))
    assert elementary_symmetric_mean(3, xs) == pytest.approx(10 ** ((-200 - 180 + 150) / 3), rel=1e-10)


def test_beta_type_examples():
    assert beta_type_mean([3.0, 3.0]) == pytest.approx(3.0)
    assert beta_type_mean([1, 2]) == pytest.approx(4.0 / 3.0)
    repeated = beta_type_mean([1, 2, 1, 2])
    assert repeated == pytest.approx((16.0 / 6.0) ** (1.0 / 3.0))
    assert abs(repeated - 4.0 / 3.0) > 0.05
    with pytest.raises(SampleTooSmall):
        beta_type_mean([1.0])
    with pytest.raises(NonpositiveInput):
        beta_type_mean([1.0, -1.0])


def test_sublevel_set_roots_examples():
    lo, hi = sublevel_set_roots((51, -50), (50, 101))
    d = math.sqrt(3189600)
    assert lo == pytest.approx((2500 - d) / 2, rel=1e-12)
    assert hi == pytest.approx((2500 + d) / 2, rel=1e-12)
    assert sublevel_set_roots((1,), (1,)) == pytest.approx((-2.0, 1.0))
    assert sublevel_set_roots((1,), (0.0,)) == pytest.approx((0.0, 0.0))
    assert sublevel_set_roots((-1,), (1,)) is not None
    with pytest.raises(ZeroLeadingCoefficient):
        sublevel_set_roots((1, -1), (1, 2))


def test_sublevel_set_is_not_an_interval():
    # between the roots the weighted sum changes sign, so {t > 0 : sum <= 0} is split
    D = quadratic_example()
    lam, xs = (51.0, -50.0), (50.0, 101.0)
    lo, hi = sublevel_set_roots(lam, xs)
    total = lambda t: sum(l * D.eval(x, t) for l, x in zip(lam, xs))  # noqa: E731
    assert total(lo / 2) <= 0 and total((lo + hi) / 2) > 0 and total(2 * hi) <= 0


def test_sublevel_set_negative_discriminant_is_none():
    # L = 1, S1 = -1, S2 = -1: discriminant 1 - 8 < 0
    assert sublevel_set_roots((2.0, -1.0), (0.0, 1.0)) is None
