import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from platoon.numerics import TruncatedNormal, tn_fit, tn_inv_cdf


def cdf_by_quadrature(mean, var, lower, upper, x, npts=200_001):
    """Trapezoidal integration of the renormalized normal density."""
    grid = np.linspace(lower, upper, npts)
    dens = np.exp(-0.5 * (grid - mean) ** 2 / var)
    total = np.trapz(dens, grid)
    mask = grid <= x
    return np.trapz(dens[mask], grid[mask]) / total


def test_fit_uses_sample_moments_and_extremes():
    d = tn_fit([1.0, 2.0, 3.0])
    assert d.mean == 2.0
    assert d.lower == 1.0 and d.upper == 3.0
    assert not d.degenerate


def test_fit_degenerate_point_mass():
    d = tn_fit([5.0, 5.0, 5.0])
    assert d.degenerate
    assert d.mean == 5.0
    assert tn_inv_cdf(d, 0.5) == 5.0


def test_fit_monte_carlo_refit():
    rng = np.random.default_rng(0)
    raw = rng.standard_normal(40_000)
    x = raw[np.abs(raw) <= 1.0][:10_000]
    d = tn_fit(x)
    assert abs(d.mean) < 0.02
    assert d.lower >= -1.0 and d.upper <= 1.0


def test_cdf_endpoints_and_monotonicity():
    d = TruncatedNormal(mean=0.3, variance=2.0, lower=-1.0, upper=2.5)
    assert d.cdf(d.lower) == 0.0
    assert d.cdf(d.upper) == 1.0
    xs = np.linspace(-1.0, 2.5, 101)
    vals = [d.cdf(x) for x in xs]
    assert all(b >= a for a, b in zip(vals, vals[1:]))


def test_inv_cdf_symmetry():
    d = TruncatedNormal(mean=0.0, variance=1.0, lower=-2.0, upper=2.0)
    assert abs(tn_inv_cdf(d, 0.5)) < 1e-10


def test_inv_cdf_untruncated_limit_matches_quadrature():
    d = TruncatedNormal(mean=0.0, variance=1.0, lower=-10.0, upper=10.0)
    x95 = tn_inv_cdf(d, 0.95)
    assert abs(x95 - 1.6449) < 1e-4
    # quadrature oracle on a tighter window
    d2 = TruncatedNormal(mean=0.5, variance=1.5, lower=-1.0, upper=3.0)
    x = tn_inv_cdf(d2, 0.7)
    assert abs(cdf_by_quadrature(0.5, 1.5, -1.0, 3.0, x) - 0.7) < 1e-6


def test_inv_cdf_limits_approach_bounds():
    d = TruncatedNormal(mean=0.0, variance=1.0, lower=-1.5, upper=1.5)
    assert tn_inv_cdf(d, 1e-12) <= -1.5 + 1e-5
    assert tn_inv_cdf(d, 1.0 - 1e-12) >= 1.5 - 1e-5


@settings(max_examples=40, deadline=None)
@given(
    st.floats(min_value=-3.0, max_value=3.0),
    st.floats(min_value=0.1, max_value=4.0),
    st.floats(min_value=0.2, max_value=3.0),
    st.floats(min_value=0.01, max_value=0.99),
)
def test_round_trip_identity(mean, var, half_width, p):
    d = TruncatedNormal(mean=mean, variance=var, lower=mean - half_width,
                        upper=mean + half_width)
    x = tn_inv_cdf(d, p)
    assert d.lower <= x <= d.upper
    assert abs(d.cdf(x) - p) < 1e-8


def test_sampling_deterministic_and_in_bounds():
    d = TruncatedNormal(mean=0.0, variance=1.0, lower=-1.0, upper=2.0)
    a = d.sample(np.random.default_rng(42), size=50)
    b = d.sample(np.random.default_rng(42), size=50)
    assert np.array_equal(a, b)
    assert np.all(a >= -1.0) and np.all(a <= 2.0)


def test_fit_requires_two_samples():
    with pytest.raises(ValueError):
        tn_fit([1.0])
