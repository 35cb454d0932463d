import numpy as np
import pytest

from platoon.numerics import GaussianKde, copula_fit, copula_sample
from platoon.numerics.copula import kendall_tau_matrix


def test_kde_cdf_monotone_and_invertible():
    rng = np.random.default_rng(1)
    kde = GaussianKde(rng.normal(size=60))
    xs = np.linspace(-4, 4, 81)
    vals = [kde.cdf(x) for x in xs]
    assert all(b > a for a, b in zip(vals, vals[1:]))
    for p in (0.05, 0.3, 0.5, 0.9):
        x = kde.inv_cdf(p)
        assert abs(kde.cdf(x) - p) < 1e-9


def test_kde_sampling_bootstrap_mean():
    rng = np.random.default_rng(2)
    data = rng.normal(loc=3.0, scale=0.5, size=200)
    kde = GaussianKde(data)
    draws = kde.sample(np.random.default_rng(3), size=2000)
    se = np.std(data) / np.sqrt(200)
    assert abs(np.mean(draws) - np.mean(data)) < 3 * se + 0.05


def test_kendall_tau_of_independent_uniforms_near_zero():
    rng = np.random.default_rng(5)
    X = rng.random((400, 2))
    tau = kendall_tau_matrix(X)
    assert abs(tau[0, 1]) < 0.1


def test_fit_then_sample_preserves_independence():
    rng = np.random.default_rng(8)
    X = rng.random((300, 2))
    model = copula_fit(X)
    draws = copula_sample(model, np.random.default_rng(9), size=10_000)
    tau = kendall_tau_matrix(draws[:2000])
    assert abs(tau[0, 1]) < 0.05


def test_one_dimensional_reduces_to_kde_sampling():
    rng = np.random.default_rng(10)
    data = rng.normal(loc=1.5, scale=0.8, size=120).reshape(-1, 1)
    model = copula_fit(data)
    draws = copula_sample(model, np.random.default_rng(11), size=4000)
    se = 0.8 / np.sqrt(120)
    assert abs(np.mean(draws) - np.mean(data)) < 3 * se


def test_comonotone_pairs_need_regularization():
    rng = np.random.default_rng(12)
    t1 = rng.normal(size=50)
    X = np.column_stack([t1, 2.0 * t1])
    model = copula_fit(X)
    assert model.correlation[0, 1] >= 0.99
    assert model.regularized
    w = np.linalg.eigvalsh(model.correlation)
    assert w.min() > 0


def test_sampling_deterministic_given_seed():
    rng = np.random.default_rng(13)
    X = rng.normal(size=(40, 3)) @ np.array([[1.0, 0.3, 0.0], [0.0, 1.0, 0.2], [0.0, 0.0, 1.0]])
    model = copula_fit(X)
    a = copula_sample(model, np.random.default_rng(77), size=25)
    b = copula_sample(model, np.random.default_rng(77), size=25)
    assert np.array_equal(a, b)


def test_samples_within_kde_support():
    rng = np.random.default_rng(14)
    X = rng.random((60, 2))
    model = copula_fit(X)
    draws = copula_sample(model, np.random.default_rng(15), size=500)
    for j, kde in enumerate(model.marginals):
        lo = kde.samples[0] - 10 * kde.bandwidth
        hi = kde.samples[-1] + 10 * kde.bandwidth
        assert np.all(draws[:, j] >= lo) and np.all(draws[:, j] <= hi)


def test_fit_requires_ten_vectors():
    with pytest.raises(ValueError):
        copula_fit(np.random.default_rng(0).normal(size=(5, 2)))
