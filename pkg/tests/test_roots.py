import math

import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import brentq

from devmeans.core.roots import find_root_decreasing, golden_section_min
from devmeans.errors import NoConvergence


def test_linear_root_is_exact():
    r = find_root_decreasing(lambda t: 2.0 - t, 0.0, 5.0)
    assert r.converged
    assert r.root == pytest.approx(2.0, abs=1e-12)
    assert r.bracket_lo <= r.root <= r.bracket_hi


def test_endpoint_zero_returns_immediately():
    r = find_root_decreasing(lambda t: 1.0 - t, 1.0, 3.0)
    assert r.root == 1.0 and r.iterations == 0


def test_no_sign_change_raises():
    with pytest.raises(NoConvergence):
        find_root_decreasing(lambda t: 1.0 + t * t, -1.0, 1.0)


def test_nan_objective_raises():
    with pytest.raises(NoConvergence):
        find_root_decreasing(lambda t: math.nan if t > 0.3 else 1.0 - t, 0.0, 2.0)


def test_budget_exhaustion_raises():
    with pytest.raises(NoConvergence):
        find_root_decreasing(lambda t: -math.atan(t - 0.123), -1e6, 1e6, max_iter=3)


def test_nonsmooth_objective_converges():
    # kink and a flat-ish stretch, where plain regula falsi stalls
    f = lambda t: -(t - 0.7) ** 3 if t > 0.7 else 10.0 * (0.7 - t)  # noqa: E731
    r = find_root_decreasing(f, 0.0, 50.0)
    assert r.converged
    assert r.root == pytest.approx(0.7, abs=1e-10)


@settings(max_examples=200, deadline=None)
@given(
    st.floats(-50, 50),
    st.floats(0.1, 10),
    st.floats(0.5, 5),
)
def test_agrees_with_brentq(shift, scale, power):
    f = lambda t: -math.copysign(abs((t - shift) / scale) ** power, t - shift)  # noqa: E731
    lo, hi = shift - 37.0, shift + 61.0
    ours = find_root_decreasing(f, lo, hi).root
    ref = brentq(lambda t: -f(t), lo, hi, xtol=1e-14, rtol=1e-15, maxiter=1000)
    assert ours == pytest.approx(ref, abs=1e-9 * (1 + abs(ref)))


def test_golden_section_quadratic():
    x, v = golden_section_min(lambda t: (t - 0.3) ** 2 + 1.0, -2.0, 5.0, tol=1e-10)
    # a flat minimum is only resolvable to about sqrt(machine epsilon)
    assert x == pytest.approx(0.3, abs=5e-8)
    assert v == pytest.approx(1.0, abs=1e-15)


def test_golden_section_tolerates_infinite_side():
    x, _ = golden_section_min(lambda t: math.inf if t > 2 else (t - 1.5) ** 2, 0.0, 4.0)
    assert x == pytest.approx(1.5, abs=1e-7)
