import numpy as np
import pytest

from newsnet.ml.baselines import MinMaxScaler
from newsnet.ml.relief import relief_rank, relief_weights


def brute_relief(X, y):
    """Direct re-derivation: scan all pairs for nearest hit and miss."""
    Xs = MinMaxScaler().fit_transform(X)
    n, d = Xs.shape
    w = np.zeros(d)
    for i in range(n):
        best_hit, best_miss = None, None
        hit_d, miss_d = np.inf, np.inf
        for j in range(n):
            if j == i:
                continue
            dist = float(np.sqrt(((Xs[i] - Xs[j]) ** 2).sum()))
            if y[j] == y[i]:
                if dist < hit_d:
                    hit_d, best_hit = dist, j
            elif dist < miss_d:
                miss_d, best_miss = dist, j
        w += np.abs(Xs[i] - Xs[best_miss]) - np.abs(Xs[i] - Xs[best_hit])
    return w


def _constructed(seed=0, n=20):
    rng = np.random.default_rng(seed)
    y = np.array([0, 1] * (n // 2))
    separating = y * 1.0 + rng.normal(0, 0.05, size=n)
    noise = rng.normal(size=(n, 3))
    X = np.column_stack([noise[:, 0], separating, noise[:, 1], noise[:, 2]])
    return X, y


def test_matches_brute_force_oracle():
    X, y = _constructed(seed=3)
    assert np.allclose(relief_weights(X, y), brute_relief(X, y), atol=1e-12)


def test_separating_feature_ranked_first():
    X, y = _constructed(seed=1)
    ranking = relief_rank(X, y)
    assert ranking[0][0] == 1
    assert ranking[0][1] > 0


def test_duplicated_column_equal_weight():
    X, y = _constructed(seed=2)
    X2 = np.column_stack([X, X[:, 1]])
    w = relief_weights(X2, y)
    assert w[1] == pytest.approx(w[-1], abs=1e-12)


def test_constant_feature_scores_zero():
    X, y = _constructed(seed=4)
    X2 = np.column_stack([X, np.full(len(y), 7.0)])
    w = relief_weights(X2, y)
    assert w[-1] == 0.0


def test_subsampled_iterations_deterministic():
    X, y = _constructed(seed=5, n=30)
    w1 = relief_weights(X, y, m=10, seed=42)
    w2 = relief_weights(X, y, m=10, seed=42)
    assert np.array_equal(w1, w2)


def test_requires_two_per_class():
    X = np.zeros((3, 2))
    with pytest.raises(ValueError, match="2 samples per class"):
        relief_weights(X, np.array([0, 0, 1]))
