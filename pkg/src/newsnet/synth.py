"""Synthetic corpus generator with planted, tunable class differences.

Effect sizes of 1 plant no signal: fake and true news are then drawn from
identical distributions, so detection accuracy should sit at chance. Effect
sizes above 1 plant the directional differences the detector looks for:

  spreader_ratio:    fake stories recruit proportionally more spreaders
  density_ratio:     extra follow edges inside a "susceptible pool", from
                     which fake spreaders are preferentially drawn
  engagement_ratio:  fake spreaders repeat-post proportionally more
  depth_effect:      fake spreader sets grow along follow edges (probability
                     1 - 1/depth_effect per pick), stretching path lengths

The pool-concentration behavior activates whenever any effect size exceeds 1;
with all at 1 the pool is never consulted. Every user is guaranteed at least
one follow edge so generated corpora survive the CSV round trip.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .corpus import FAKE, TRUE, EngagementTable, SocialGraph, save_corpus

POOL_BIAS = 0.85


@dataclass(frozen=True)
class SyntheticSpec:
    n_users: int = 200
    edge_prob: float = 0.03
    news_per_class: int = 50
    spreader_ratio: float = 1.0
    density_ratio: float = 1.0
    engagement_ratio: float = 1.0
    depth_effect: float = 1.0
    susceptible_fraction: float = 0.4
    base_spreaders: int = 12
    base_engagement: float = 1.0
    seed: int = 0

    def validate(self) -> None:
        if self.n_users < 2:
            raise ValueError("need at least 2 users")
        if not 0.0 <= self.edge_prob <= 1.0:
            raise ValueError("edge_prob must be in [0, 1]")
        if self.news_per_class < 1:
            raise ValueError("need at least 1 news story per class")
        for name in ("spreader_ratio", "density_ratio", "engagement_ratio",
                     "depth_effect"):
            if getattr(self, name) < 1.0:
                raise ValueError(f"{name} must be >= 1 (1 plants no signal)")
        max_size = math.ceil(self.base_spreaders * self.spreader_ratio * 1.4)
        if max_size > self.n_users:
            raise ValueError(f"infeasible spec: up to {max_size} spreaders "
                             f"requested but only {self.n_users} users exist")


STRONG_EFFECTS = dict(spreader_ratio=3.0, density_ratio=3.0,
                      engagement_ratio=3.0, depth_effect=2.0)


@dataclass(frozen=True)
class SyntheticCorpus:
    graph: SocialGraph
    table: EngagementTable
    truth: dict


def _draw_edges(spec: SyntheticSpec, rng, users, pool):
    pool_set = set(pool)
    p_pool = min(1.0, spec.edge_prob * spec.density_ratio)
    edges = set()
    n = len(users)
    coins = rng.random(n * (n - 1))
    k = 0
    for u in users:
        for v in users:
            if u == v:
                continue
            p = p_pool if (u in pool_set and v in pool_set) else spec.edge_prob
            if coins[k] < p:
                edges.add((u, v))
            k += 1
    connected = {u for e in edges for u in e}
    for i, u in enumerate(users):
        if u not in connected:  # keep every user reachable through edges.csv
            v = users[(i + 1) % n]
            edges.add((u, v))
    return edges


def _walk_grow(rng, size, start, undirected, candidates):
    """Grow a connected-ish spreader set along follow edges."""
    chosen = [start]
    chosen_set = {start}
    while len(chosen) < size:
        frontier = sorted({v for u in chosen for v in undirected.get(u, ())
                           if v not in chosen_set})
        if not frontier:
            rest = [u for u in candidates if u not in chosen_set]
            if not rest:
                break
            frontier = rest
        pick = frontier[int(rng.integers(0, len(frontier)))]
        chosen.append(pick)
        chosen_set.add(pick)
    return chosen


def _draw_spreaders(spec, rng, size, label, pool, others, undirected, planted):
    if not planted:
        population = sorted(set(pool) | set(others))
        picks = rng.choice(len(population), size=size, replace=False)
        return [population[int(i)] for i in sorted(picks)]
    preferred, fallback = (sorted(pool), sorted(others))
    if label == TRUE:
        preferred, fallback = fallback, preferred
    walk_prob = 1.0 - 1.0 / spec.depth_effect if label == FAKE else 0.0
    if walk_prob > 0.0 and rng.random() < walk_prob:
        start = preferred[int(rng.integers(0, len(preferred)))]
        candidates = preferred + fallback
        return _walk_grow(rng, size, start, undirected, candidates)
    chosen = []
    chosen_set = set()
    while len(chosen) < size:
        source = preferred if rng.random() < POOL_BIAS else fallback
        available = [u for u in source if u not in chosen_set]
        if not available:
            available = [u for u in preferred + fallback if u not in chosen_set]
            if not available:
                break
        pick = available[int(rng.integers(0, len(available)))]
        chosen.append(pick)
        chosen_set.add(pick)
    return chosen


def generate(spec: SyntheticSpec) -> SyntheticCorpus:
    spec.validate()
    rng = np.random.default_rng(spec.seed)
    users = [f"u{i:04d}" for i in range(spec.n_users)]
    n_pool = max(1, math.ceil(spec.susceptible_fraction * spec.n_users))
    pool_idx = rng.choice(spec.n_users, size=n_pool, replace=False)
    pool = sorted(users[int(i)] for i in pool_idx)
    others = sorted(set(users) - set(pool))
    planted = any(getattr(spec, name) > 1.0 for name in
                  ("spreader_ratio", "density_ratio", "engagement_ratio",
                   "depth_effect"))

    edges = _draw_edges(spec, rng, users, pool)
    undirected: dict = {}
    for u, v in sorted(edges):
        undirected.setdefault(u, set()).add(v)
        undirected.setdefault(v, set()).add(u)
    graph = SocialGraph.from_edges(edges)

    records = {}
    labels = {}
    news_truth = []
    n_news = 2 * spec.news_per_class
    for i in range(n_news):
        news = f"n{i:04d}"
        label = FAKE if i < spec.news_per_class else TRUE
        labels[news] = label
        target = spec.base_spreaders * (spec.spreader_ratio if label == FAKE else 1.0)
        size = max(2, int(round(target * rng.uniform(0.6, 1.4))))
        size = min(size, spec.n_users)
        spreaders = _draw_spreaders(spec, rng, size, label, pool, others,
                                    undirected, planted)
        lam = spec.base_engagement * (spec.engagement_ratio if label == FAKE else 1.0)
        total = 0
        for u in spreaders:
            count = 1 + int(rng.poisson(lam))
            records[(news, u)] = count
            total += count
        news_truth.append({"news_id": news, "label": label,
                           "n_spreaders": len(spreaders), "total_engagements": total})

    table = EngagementTable.from_records(records, labels)
    truth = {
        "spec": asdict(spec),
        "planted": planted,
        "n_users": len(users),
        "n_follow_edges": len(edges),
        "n_engagement_records": len(records),
        "n_news": n_news,
        "n_fake": spec.news_per_class,
        "n_true": spec.news_per_class,
        "susceptible_pool": pool,
        "news": news_truth,
    }
    return SyntheticCorpus(graph=graph, table=table, truth=truth)


def write_corpus(corpus: SyntheticCorpus, out_dir) -> dict:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "edges": out / "edges.csv",
        "engagements": out / "engagements.csv",
        "labels": out / "labels.csv",
        "truth": out / "truth.json",
    }
    save_corpus(corpus.graph, corpus.table, paths["edges"], paths["engagements"],
                paths["labels"])
    with open(paths["truth"], "w", encoding="utf-8") as f:
        json.dump(corpus.truth, f, indent=2, sort_keys=True)
    return {k: str(v) for k, v in paths.items()}
