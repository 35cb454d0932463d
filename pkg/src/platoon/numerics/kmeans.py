"""Two-cluster Lloyd iteration for the free-motion / congested split."""

import numpy as np

from ..errors import Degenerate


def kmeans2(points, seed=0, max_iter=200):
    """Cluster 2-D points into two groups.

    Returns (centroids, labels) at a Lloyd fixed point: every point is
    assigned to its nearest centroid and each centroid is its cluster mean.
    Deterministic for a given seed.

    Raises Degenerate when fewer than 2 distinct points are supplied.
    """
    X = np.atleast_2d(np.asarray(points, dtype=float))
    uniq = np.unique(X, axis=0)
    if uniq.shape[0] < 2:
        raise Degenerate("need at least 2 distinct points")
    rng = np.random.default_rng(seed)
    idx = rng.choice(uniq.shape[0], size=2, replace=False)
    centroids = uniq[idx].astype(float)
    labels = None
    for _ in range(max_iter):
        d0 = np.sum((X - centroids[0]) ** 2, axis=1)
        d1 = np.sum((X - centroids[1]) ** 2, axis=1)
        new_labels = (d1 < d0).astype(int)
        for c in (0, 1):
            member = new_labels == c
            if not member.any():
                # re-seed an emptied cluster with the farthest point
                far = np.argmax(np.sum((X - centroids[1 - c]) ** 2, axis=1))
                new_labels[far] = c
                member = new_labels == c
            centroids[c] = X[member].mean(axis=0)
        if labels is not None and np.array_equal(new_labels, labels):
            break
        labels = new_labels
    return centroids, labels
