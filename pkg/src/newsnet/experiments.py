"""Batch experiment drivers: ablations, sweeps, sampling and early detection.

Every run is reproducible from (config, master seed): repetition-derived
seeds feed only the samplers, while fold assignment and classifier seeds
derive from the master seed alone. Sampling a proportion of 1.0 therefore
reproduces the full-corpus result exactly, and threshold sweeps of feature
subsets that never touch susceptibility are exactly constant.

Outputs are plotting-ready CSV rows; no plotting happens here.
"""

from __future__ import annotations

import json
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields

import numpy as np

from .corpus import FAKE, TRUE
from .features import (FARTHER_DISTANCE, DENSER_NETWORKS, FEATURE_REGISTRY,
                       MORE_SPREADERS, PATTERNS, SIMILARITY, STRONGER_ENGAGEMENT,
                       FeatureExtractor, FeatureMatrix, pattern_mask)
from .diffusion import subsample
from .ml.crossval import CLASSIFIERS, cross_validate, evaluate_masks
from .util import derive_seed


class ConfigError(ValueError):
    pass


_DEFAULT_GRID = tuple(round(0.1 * k, 1) for k in range(1, 11))
_DEFAULT_BALANCE = tuple(round(0.1 * k, 1) for k in range(1, 10))

ABLATION_SUBSETS = (
    ("more_spreaders", (MORE_SPREADERS,)),
    ("farther_distance", (FARTHER_DISTANCE,)),
    ("stronger_engagement", (STRONGER_ENGAGEMENT,)),
    ("denser_networks", (DENSER_NETWORKS,)),
    ("more_spreaders+farther_distance", (MORE_SPREADERS, FARTHER_DISTANCE)),
    ("more_spreaders+stronger_engagement", (MORE_SPREADERS, STRONGER_ENGAGEMENT)),
    ("more_spreaders+denser_networks", (MORE_SPREADERS, DENSER_NETWORKS)),
    ("farther_distance+stronger_engagement", (FARTHER_DISTANCE, STRONGER_ENGAGEMENT)),
    ("farther_distance+denser_networks", (FARTHER_DISTANCE, DENSER_NETWORKS)),
    ("stronger_engagement+denser_networks", (STRONGER_ENGAGEMENT, DENSER_NETWORKS)),
    ("all_minus_denser_networks",
     (MORE_SPREADERS, FARTHER_DISTANCE, STRONGER_ENGAGEMENT)),
    ("all_minus_stronger_engagement",
     (MORE_SPREADERS, FARTHER_DISTANCE, DENSER_NETWORKS)),
    ("all_minus_farther_distance",
     (MORE_SPREADERS, STRONGER_ENGAGEMENT, DENSER_NETWORKS)),
    ("all_minus_more_spreaders",
     (FARTHER_DISTANCE, STRONGER_ENGAGEMENT, DENSER_NETWORKS)),
    ("all_patterns",
     (MORE_SPREADERS, FARTHER_DISTANCE, STRONGER_ENGAGEMENT, DENSER_NETWORKS)),
    ("similarity_only", (SIMILARITY,)),
    ("all_plus_similarity",
     (MORE_SPREADERS, FARTHER_DISTANCE, STRONGER_ENGAGEMENT, DENSER_NETWORKS,
      SIMILARITY)),
)
SUBSET_BY_NAME = dict(ABLATION_SUBSETS)

DEFAULT_SWEEP_SUBSETS = (
    "more_spreaders", "farther_distance", "stronger_engagement",
    "denser_networks", "similarity_only", "all_patterns", "all_plus_similarity",
)


@dataclass
class ExperimentConfig:
    edges: str | None = None
    engagements: str | None = None
    labels: str | None = None
    classifier: str = "random_forest"
    classifier_params: dict = field(default_factory=dict)
    theta: float = 0.5
    theta_grid: tuple = tuple(round(0.1 * k, 1) for k in range(11))
    susceptibility_methods: tuple = ("by_news", "by_frequency")
    wl_iterations: int = 3
    patterns: tuple = PATTERNS
    sweep_subsets: tuple = DEFAULT_SWEEP_SUBSETS
    proportions: tuple = _DEFAULT_GRID
    balance_fractions: tuple = _DEFAULT_BALANCE
    balance_total: int | None = None
    modes: tuple = ("nodes", "edges")
    repetitions: int = 5
    seed: int = 0
    out: str = "runs"
    jobs: int = 1
    synthetic: dict = field(default_factory=dict)

    def validate(self) -> None:
        if self.classifier not in CLASSIFIERS:
            raise ConfigError(f"unknown classifier {self.classifier!r}")
        for name in ("theta_grid", "proportions", "balance_fractions"):
            values = getattr(self, name)
            if not values:
                raise ConfigError(f"{name} must be nonempty")
            if any(not 0.0 <= v <= 1.0 for v in values):
                raise ConfigError(f"{name} values must lie in [0, 1]")
        if not 0.0 <= self.theta <= 1.0:
            raise ConfigError("theta must lie in [0, 1]")
        unknown = set(self.patterns) - set(PATTERNS)
        if unknown:
            raise ConfigError(f"unknown pattern(s): {sorted(unknown)}")
        # the 142-index contract carries both scoring methods
        if tuple(self.susceptibility_methods) != ("by_news", "by_frequency"):
            raise ConfigError("susceptibility_methods must be "
                              "['by_news', 'by_frequency']: the feature vector "
                              "contains columns for both")
        unknown = set(self.sweep_subsets) - set(SUBSET_BY_NAME)
        if unknown:
            raise ConfigError(f"unknown sweep subset(s): {sorted(unknown)}")
        for mode in self.modes:
            if mode not in ("nodes", "edges"):
                raise ConfigError(f"unknown subsample mode {mode!r}")
        if self.repetitions < 1:
            raise ConfigError("repetitions must be >= 1")
        if self.wl_iterations < 0:
            raise ConfigError("wl_iterations must be >= 0")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")
        if self.seed is None:
            raise ConfigError("seed is required")

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config key(s): {sorted(unknown)}")
        merged = {}
        for f in fields(cls):
            if f.name in data and data[f.name] is not None:
                value = data[f.name]
                if isinstance(value, list):
                    value = tuple(value)
                merged[f.name] = value
        config = cls(**merged)
        config.validate()
        return config

    @classmethod
    def from_json_file(cls, path) -> "ExperimentConfig":
        try:
            with open(path, encoding="utf-8") as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError("config root must be a JSON object")
        return cls.from_dict(data)


def _mean(values) -> float:
    return sum(values) / len(values) if values else 0.0


def run_ablation(extractor: FeatureExtractor, config: ExperimentConfig):
    """Evaluate the 17 canonical pattern subsets; one extraction per fold."""
    masks = {name: pattern_mask(patterns) for name, patterns in ABLATION_SUBSETS}
    reports = evaluate_masks(extractor, masks, classifier=config.classifier,
                             theta=config.theta, seed=config.seed,
                             params=config.classifier_params)
    header = ("subset", "patterns", "accuracy", "f1")
    rows = [(name, "+".join(patterns), reports[name].accuracy, reports[name].f1)
            for name, patterns in ABLATION_SUBSETS]
    return header, rows


def run_threshold_sweep(extractor: FeatureExtractor, config: ExperimentConfig):
    """Re-extract per threshold; susceptibility-free subsets stay constant."""
    masks = {name: pattern_mask(SUBSET_BY_NAME[name]) for name in config.sweep_subsets}
    header = ("theta", "subset", "accuracy", "f1")
    rows = []
    for theta in config.theta_grid:
        reports = evaluate_masks(extractor, masks, classifier=config.classifier,
                                 theta=theta, seed=config.seed,
                                 params=config.classifier_params)
        for name in config.sweep_subsets:
            rows.append((theta, name, reports[name].accuracy, reports[name].f1))
    return header, rows


def _run_jobs(worker, tasks, jobs):
    if jobs <= 1:
        return [worker(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(worker, tasks))


def _eval_task(args):
    extractor, config, mask = args
    report = cross_validate(extractor, classifier=config.classifier, mask=mask,
                            theta=config.theta, seed=config.seed,
                            params=config.classifier_params)
    return report.accuracy, report.f1


def _sampling_task(args):
    extractor, config, mask, fake_ids, true_ids = args
    networks = {n: extractor.networks[n] for n in fake_ids + true_ids}
    return _eval_task((extractor.with_networks(networks), config, mask))


def _early_task(args):
    extractor, config, mask, mode, proportion, rep = args
    subsampled = {
        news: subsample(net, mode, proportion,
                        derive_seed(config.seed, "early", mode, repr(proportion),
                                    rep, news))
        for news, net in sorted(extractor.networks.items())
    }
    return _eval_task((extractor.with_networks(subsampled), config, mask))


def run_sampling_study(extractor: FeatureExtractor, config: ExperimentConfig,
                       mode: str):
    """Scale the corpus (news_count) or skew the class ratio (class_balance).

    Balanced runs report accuracy as headline metric, unbalanced runs F1;
    rows whose sample cannot be stratified are flagged and skipped.
    """
    if mode not in ("news_count", "class_balance"):
        raise ConfigError(f"unknown sampling mode {mode!r}")
    mask = pattern_mask(config.patterns)
    fake_pop = sorted(n for n in extractor.networks
                      if extractor.table.labels[n] == FAKE)
    true_pop = sorted(n for n in extractor.networks
                      if extractor.table.labels[n] == TRUE)
    if mode == "news_count":
        grid = [("news_count", p, math.ceil(p * len(fake_pop)),
                 math.ceil(p * len(true_pop))) for p in config.proportions]
        metric = "accuracy"
    else:
        total = config.balance_total
        if total is None:
            total = int(min(len(fake_pop), len(true_pop)) /
                        max(config.balance_fractions))
        grid = [("class_balance", q, round(q * total), total - round(q * total))
                for q in config.balance_fractions]
        metric = "f1"

    header = ("mode", "proportion", "n_fake", "n_true", "repetitions", "status",
              "accuracy", "f1", "metric")
    points = []
    tasks = []
    task_keys = []
    for mode_name, p, n_fake, n_true in grid:
        feasible = (5 <= n_fake <= len(fake_pop)) and (5 <= n_true <= len(true_pop))
        points.append((mode_name, p, n_fake, n_true, feasible))
        if not feasible:
            continue
        for rep in range(config.repetitions):
            rng = random.Random(derive_seed(config.seed, "sample", mode_name,
                                            repr(p), rep))
            fake_ids = sorted(rng.sample(fake_pop, n_fake))
            true_ids = sorted(rng.sample(true_pop, n_true))
            tasks.append((extractor, config, mask, fake_ids, true_ids))
            task_keys.append((mode_name, p))
    results = _run_jobs(_sampling_task, tasks, config.jobs)
    by_point: dict = {}
    for key, (acc, f1) in zip(task_keys, results):
        by_point.setdefault(key, []).append((acc, f1))
    rows = []
    for mode_name, p, n_fake, n_true, feasible in points:
        if not feasible:
            rows.append((mode_name, p, n_fake, n_true, 0, "skipped", "", "", metric))
            continue
        values = by_point[(mode_name, p)]
        rows.append((mode_name, p, n_fake, n_true, len(values), "ok",
                     _mean([a for a, _ in values]), _mean([f for _, f in values]),
                     metric))
    return header, rows


def run_early_detection(extractor: FeatureExtractor, config: ExperimentConfig):
    """Subsample every network per (mode, proportion), re-extract, evaluate."""
    mask = pattern_mask(config.patterns)
    header = ("mode", "proportion", "repetitions", "accuracy", "f1")
    tasks = []
    points = []
    for mode in config.modes:
        for p in config.proportions:
            for rep in range(config.repetitions):
                tasks.append((extractor, config, mask, mode, p, rep))
                points.append((mode, p))
    results = _run_jobs(_early_task, tasks, config.jobs)
    grouped: dict = {}
    for point, (acc, f1) in zip(points, results):
        grouped.setdefault(point, []).append((acc, f1))
    rows = []
    for mode in config.modes:
        for p in config.proportions:
            values = grouped[(mode, p)]
            rows.append((mode, p, len(values),
                         _mean([a for a, _ in values]),
                         _mean([f for _, f in values])))
    return header, rows


def feature_class_stats(matrix: FeatureMatrix):
    """Per-feature location statistics split by news label (plotting-ready)."""
    if len(matrix.news_ids) == 0:
        raise ValueError("feature matrix is empty")
    header = ("feature_index", "feature_name", "label", "mean", "median", "q1", "q3")
    labels = np.array(matrix.labels)
    rows = []
    for spec in FEATURE_REGISTRY:
        col = matrix.X[:, spec.index - 1]
        for label in (FAKE, TRUE):
            values = col[labels == label]
            if values.size == 0:
                continue
            rows.append((spec.index, spec.name, label,
                         float(np.mean(values)), float(np.median(values)),
                         float(np.percentile(values, 25)),
                         float(np.percentile(values, 75))))
    return header, rows
