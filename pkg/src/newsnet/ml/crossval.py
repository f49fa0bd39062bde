"""Leakage-safe stratified cross-validation, metrics, and classifier fitting.

Per fold: susceptibility models and WL reference sets are fit on the training
news only, features are re-extracted for the whole corpus under those models,
the classifier is trained on training rows and scored on the held-out fold.
The fake class is positive for F1.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

import numpy as np

from ..corpus import FAKE
from ..features import FeatureExtractor, N_FEATURES, extract_matrix
from ..susceptibility import METHODS
from ..util import derive_seed
from .baselines import GaussianNBClassifier, KNNClassifier
from .forest import DecisionTreeClassifier, RandomForestClassifier

CLASSIFIERS = ("random_forest", "decision_tree", "knn", "gaussian_nb")
N_FOLDS = 5


def encode_labels(labels) -> np.ndarray:
    return np.array([1 if lab == FAKE else 0 for lab in labels], dtype=np.int64)


@dataclass(frozen=True)
class DatasetSplit:
    folds: dict  # news_id -> fold index
    n_folds: int
    seed: int

    def train_news(self, fold) -> list:
        return sorted(n for n, f in self.folds.items() if f != fold)

    def test_news(self, fold) -> list:
        return sorted(n for n, f in self.folds.items() if f == fold)


def stratified_folds(labels: dict, n_folds: int = N_FOLDS, seed: int = 0) -> DatasetSplit:
    """Deal each class round-robin after a seeded shuffle; counts differ <= 1."""
    assignment = {}
    rng = random.Random(derive_seed(seed, "folds"))
    for label in sorted(set(labels.values())):
        ids = sorted(n for n, lab in labels.items() if lab == label)
        if len(ids) < n_folds:
            raise ValueError(f"too few {label!r} news to stratify into "
                             f"{n_folds} folds ({len(ids)})")
        rng.shuffle(ids)
        for pos, news in enumerate(ids):
            assignment[news] = pos % n_folds
    return DatasetSplit(folds=assignment, n_folds=n_folds, seed=seed)


def confusion(y_true, y_pred) -> dict:
    y_true = np.asarray(y_true)
    y_pred = np.asarray(y_pred)
    return {
        "tp": int(np.sum((y_true == 1) & (y_pred == 1))),
        "fp": int(np.sum((y_true == 0) & (y_pred == 1))),
        "tn": int(np.sum((y_true == 0) & (y_pred == 0))),
        "fn": int(np.sum((y_true == 1) & (y_pred == 0))),
    }


def accuracy_from(conf) -> float:
    total = conf["tp"] + conf["fp"] + conf["tn"] + conf["fn"]
    return (conf["tp"] + conf["tn"]) / total if total else 0.0


def f1_from(conf) -> float:
    denom = 2 * conf["tp"] + conf["fp"] + conf["fn"]
    return 2 * conf["tp"] / denom if denom else 0.0


@dataclass(frozen=True)
class EvalReport:
    classifier: str
    theta: float
    fold_accuracy: tuple
    fold_f1: tuple
    confusion: dict  # summed over folds

    @property
    def accuracy(self) -> float:
        return sum(self.fold_accuracy) / len(self.fold_accuracy)

    @property
    def f1(self) -> float:
        return sum(self.fold_f1) / len(self.fold_f1)

    def to_dict(self) -> dict:
        return {
            "classifier": self.classifier,
            "theta": self.theta,
            "fold_accuracy": list(self.fold_accuracy),
            "fold_f1": list(self.fold_f1),
            "accuracy_mean": self.accuracy,
            "f1_mean": self.f1,
            "confusion": dict(self.confusion),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def fit_random_forest(X, y, n_trees=100, max_features="sqrt", max_depth=None,
                      min_leaf=1, bootstrap=True, seed=0) -> RandomForestClassifier:
    _check_training_set(y)
    clf = RandomForestClassifier(n_trees=n_trees, max_features=max_features,
                                 max_depth=max_depth, min_leaf=min_leaf,
                                 bootstrap=bootstrap, seed=seed)
    return clf.fit(X, y)


def fit_baseline(kind: str, X, y, **params):
    _check_training_set(y)
    if kind == "decision_tree":
        clf = DecisionTreeClassifier(max_depth=params.get("max_depth"),
                                     min_leaf=params.get("min_leaf", 1),
                                     seed=params.get("seed", 0))
    elif kind == "knn":
        clf = KNNClassifier(k=params.get("k", 5))
    elif kind == "gaussian_nb":
        clf = GaussianNBClassifier()
    else:
        raise ValueError(f"unknown baseline kind {kind!r}")
    return clf.fit(X, y)


def fit_classifier(kind: str, X, y, seed: int = 0, params: dict | None = None):
    params = dict(params or {})
    if kind == "random_forest":
        params.setdefault("seed", seed)
        return fit_random_forest(X, y, **params)
    if kind in ("decision_tree",):
        params.setdefault("seed", seed)
    if kind not in CLASSIFIERS:
        raise ValueError(f"unknown classifier kind {kind!r}")
    return fit_baseline(kind, X, y, **params)


def _check_training_set(y):
    y = np.asarray(y)
    if y.size < 2:
        raise ValueError("need at least 2 training samples")
    if len(set(y.tolist())) < 2:
        raise ValueError("single-class training set")


@dataclass
class _MaskState:
    fold_accuracy: list = field(default_factory=list)
    fold_f1: list = field(default_factory=list)
    confusion: dict = field(default_factory=lambda: {"tp": 0, "fp": 0, "tn": 0, "fn": 0})


def evaluate_masks(extractor: FeatureExtractor, masks: dict, *, classifier: str,
                   theta: float, seed: int, params: dict | None = None,
                   split: DatasetSplit | None = None, methods=METHODS) -> dict:
    """Cross-validate several feature masks sharing one extraction per fold.

    `masks` maps a row name to a list of 1-based feature indices. Returns
    {row name: EvalReport}. The fold assignment and classifier seeds depend
    only on the master seed, never on the mask, so masks over identical
    feature values produce identical reports.
    """
    if classifier not in CLASSIFIERS:
        raise ValueError(f"unknown classifier kind {classifier!r}")
    # split over the extractor's networks: a restricted corpus sees only its news
    labels = {news: extractor.table.labels[news] for news in extractor.networks}
    if split is None:
        split = stratified_folds(labels, N_FOLDS, seed)
    states = {name: _MaskState() for name in masks}
    for fold in range(split.n_folds):
        train_news = split.train_news(fold)
        test_news = split.test_news(fold)
        matrix = extract_matrix(extractor, train_news, theta, methods=methods)
        X_train, lab_train = matrix.rows_for(train_news)
        X_test, lab_test = matrix.rows_for(test_news)
        y_train = encode_labels(lab_train)
        y_test = encode_labels(lab_test)
        clf_seed = derive_seed(seed, "clf", classifier, fold)
        for name, mask in masks.items():
            cols = [i - 1 for i in mask]
            clf = fit_classifier(classifier, X_train[:, cols], y_train,
                                 seed=clf_seed, params=params)
            pred = clf.predict(X_test[:, cols])
            conf = confusion(y_test, pred)
            state = states[name]
            state.fold_accuracy.append(accuracy_from(conf))
            state.fold_f1.append(f1_from(conf))
            for key in state.confusion:
                state.confusion[key] += conf[key]
    return {
        name: EvalReport(classifier=classifier, theta=theta,
                         fold_accuracy=tuple(state.fold_accuracy),
                         fold_f1=tuple(state.fold_f1),
                         confusion=state.confusion)
        for name, state in states.items()
    }


def cross_validate(extractor: FeatureExtractor, *, classifier: str = "random_forest",
                   mask=None, theta: float = 0.5, seed: int = 0,
                   params: dict | None = None, split: DatasetSplit | None = None,
                   methods=METHODS) -> EvalReport:
    if mask is None:
        mask = list(range(1, N_FEATURES + 1))
    reports = evaluate_masks(extractor, {"all": list(mask)}, classifier=classifier,
                             theta=theta, seed=seed, params=params, split=split,
                             methods=methods)
    return reports["all"]
