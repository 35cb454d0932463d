import numpy as np
import pytest

from platoon.errors import Degenerate
from platoon.numerics import kmeans2


def test_separated_clusters():
    pts = [(0.0, 0.0), (0.0, 1.0), (10.0, 10.0), (10.0, 11.0)]
    centroids, labels = kmeans2(pts, seed=0)
    order = np.argsort(centroids[:, 0])
    assert np.allclose(centroids[order], [[0.0, 0.5], [10.0, 10.5]])
    assert labels[0] == labels[1]
    assert labels[2] == labels[3]
    assert labels[0] != labels[2]


def test_identical_points_degenerate():
    with pytest.raises(Degenerate):
        kmeans2([(1.0, 1.0)] * 5, seed=0)


def test_lloyd_fixed_point_properties():
    rng = np.random.default_rng(42)
    pts = np.vstack([rng.normal([0, 0], 0.5, size=(30, 2)),
                     rng.normal([5, 5], 0.5, size=(30, 2))])
    centroids, labels = kmeans2(pts, seed=1)
    for c in (0, 1):
        assert np.allclose(centroids[c], pts[labels == c].mean(axis=0))
    d = np.stack([np.sum((pts - centroids[c]) ** 2, axis=1) for c in (0, 1)])
    assert np.array_equal(labels, np.argmin(d, axis=0))


def test_generative_speed_gap_recovery():
    rng = np.random.default_rng(7)
    n = 100
    a = rng.normal([8.0, 10.0], [1.0, 2.0], size=(n, 2))
    b = rng.normal([2.0, 60.0], [1.0, 5.0], size=(n, 2))
    pts = np.vstack([a, b])
    truth = np.array([0] * n + [1] * n)
    _, labels = kmeans2(pts, seed=3)
    agree = np.mean(labels == truth)
    assert max(agree, 1.0 - agree) >= 0.95


def test_deterministic_given_seed():
    rng = np.random.default_rng(9)
    pts = rng.normal(size=(50, 2))
    c1, l1 = kmeans2(pts, seed=5)
    c2, l2 = kmeans2(pts, seed=5)
    assert np.array_equal(c1, c2)
    assert np.array_equal(l1, l2)
