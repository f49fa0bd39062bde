"""k-NN and Gaussian naive Bayes baselines (binary labels, 1 = fake).

Both consume min-max scaled features; the scaler is fit on training data
only. Equidistant k-NN neighbors and exact posterior ties break toward the
fake class, keeping predictions deterministic.
"""

from __future__ import annotations

import numpy as np

VARIANCE_FLOOR = 1e-9


class MinMaxScaler:
    def fit(self, X):
        X = np.asarray(X, dtype=np.float64)
        self.min_ = X.min(axis=0)
        span = X.max(axis=0) - self.min_
        span[span == 0.0] = 1.0  # constant dimensions map to 0
        self.span_ = span
        return self

    def transform(self, X):
        return (np.asarray(X, dtype=np.float64) - self.min_) / self.span_

    def fit_transform(self, X):
        return self.fit(X).transform(X)


class KNNClassifier:
    def __init__(self, k=5):
        self.k = k

    def fit(self, X, y):
        self.scaler = MinMaxScaler()
        self._X = self.scaler.fit_transform(X)
        self._y = np.asarray(y, dtype=np.int64)
        return self

    def predict(self, X):
        X = self.scaler.transform(X)
        out = np.empty(X.shape[0], dtype=np.int64)
        for i in range(X.shape[0]):
            d = np.sqrt(((self._X - X[i]) ** 2).sum(axis=1))
            # equidistant neighbors prefer fake, then lowest training index
            order = sorted(range(len(d)), key=lambda j: (d[j], -self._y[j], j))
            votes = self._y[order[: self.k]]
            fake = int(votes.sum())
            out[i] = 1 if 2 * fake >= len(votes) else 0
        return out


class GaussianNBClassifier:
    def fit(self, X, y):
        self.scaler = MinMaxScaler()
        X = self.scaler.fit_transform(X)
        y = np.asarray(y, dtype=np.int64)
        n = len(y)
        self.classes_ = (0, 1)
        self.log_prior_ = {}
        self.mean_ = {}
        self.var_ = {}
        for c in self.classes_:
            rows = X[y == c]
            self.log_prior_[c] = np.log(len(rows) / n)
            self.mean_[c] = rows.mean(axis=0)
            self.var_[c] = np.maximum(rows.var(axis=0), VARIANCE_FLOOR)
        return self

    def _log_likelihood(self, X, c):
        var = self.var_[c]
        return (-0.5 * (np.log(2.0 * np.pi * var) + (X - self.mean_[c]) ** 2 / var)
                ).sum(axis=1) + self.log_prior_[c]

    def predict(self, X):
        X = self.scaler.transform(X)
        ll_true = self._log_likelihood(X, 0)
        ll_fake = self._log_likelihood(X, 1)
        return (ll_fake >= ll_true).astype(np.int64)  # tie -> fake
