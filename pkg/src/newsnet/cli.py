"""Command line interface.

Subcommands: ingest, stats, extract, evaluate, ablate, sweep-threshold,
sample-study, early-detect, rank-features, feature-stats, synth.

Common flags: --config <json>, --seed, --out, --jobs; flags override config
values. Exit codes: 0 success, 1 input error, 2 config error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path

from . import experiments
from .corpus import CorpusError, corpus_stats, load_corpus, save_corpus
from .experiments import ConfigError, ExperimentConfig
from .features import (FEATURE_NAMES, FeatureExtractor, extract_matrix,
                       pattern_mask, registry_json)
from .ml.crossval import cross_validate, encode_labels
from .ml.relief import relief_rank
from .synth import SyntheticSpec, generate, write_corpus
from .util import write_csv


def _build_config(args) -> ExperimentConfig:
    data = {}
    if args.config:
        config = ExperimentConfig.from_json_file(args.config)
        data = asdict(config)
    for key in ("edges", "engagements", "labels", "seed", "out", "jobs",
                "classifier", "theta", "repetitions"):
        value = getattr(args, key, None)
        if value is not None:
            data[key] = value
    if getattr(args, "patterns", None):
        data["patterns"] = tuple(args.patterns.split(","))
    return ExperimentConfig.from_dict(data)


def _require_corpus(config: ExperimentConfig):
    missing = [name for name in ("edges", "engagements", "labels")
               if not getattr(config, name)]
    if missing:
        raise ConfigError(f"missing corpus path(s): {', '.join(missing)} "
                          "(set via --config or flags)")
    return load_corpus(config.edges, config.engagements, config.labels)


def _build_extractor(config: ExperimentConfig) -> FeatureExtractor:
    graph, table = _require_corpus(config)
    return FeatureExtractor.build(graph, table, h=config.wl_iterations,
                                  seed=config.seed)


def _out_dir(config: ExperimentConfig) -> Path:
    out = Path(config.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_ingest(args) -> int:
    config = _build_config(args)
    graph, table = _require_corpus(config)
    out = _out_dir(config)
    save_corpus(graph, table, out / "edges.csv", out / "engagements.csv",
                out / "labels.csv")
    stats = corpus_stats(graph, table)
    (out / "stats.json").write_text(stats.to_json() + "\n", encoding="utf-8")
    print(stats.to_json())
    return 0


def cmd_stats(args) -> int:
    config = _build_config(args)
    graph, table = _require_corpus(config)
    print(corpus_stats(graph, table).to_json())
    return 0


def _descriptive_matrix(config: ExperimentConfig, extractor: FeatureExtractor):
    # full-corpus susceptibility: descriptive analyses, not held-out evaluation
    return extract_matrix(extractor, extractor.table.news_ids(), config.theta)


def cmd_extract(args) -> int:
    config = _build_config(args)
    extractor = _build_extractor(config)
    matrix = _descriptive_matrix(config, extractor)
    out = _out_dir(config)
    matrix.write_csv(out / "features.csv")
    with open(out / "feature_registry.json", "w", encoding="utf-8") as f:
        json.dump(registry_json(), f, indent=2)
    print(f"wrote {out / 'features.csv'} ({len(matrix.news_ids)} news x "
          f"{matrix.X.shape[1]} features)")
    return 0


def cmd_evaluate(args) -> int:
    config = _build_config(args)
    extractor = _build_extractor(config)
    mask = pattern_mask(config.patterns)
    report = cross_validate(extractor, classifier=config.classifier, mask=mask,
                            theta=config.theta, seed=config.seed,
                            params=config.classifier_params)
    out = _out_dir(config)
    (out / "evaluation.json").write_text(report.to_json() + "\n", encoding="utf-8")
    print(report.to_json())
    return 0


def cmd_ablate(args) -> int:
    config = _build_config(args)
    extractor = _build_extractor(config)
    header, rows = experiments.run_ablation(extractor, config)
    out = _out_dir(config)
    write_csv(out / "ablation.csv", header, rows)
    for row in rows:
        print(f"{row[0]}: accuracy={row[2]:.3f} f1={row[3]:.3f}")
    return 0


def cmd_sweep_threshold(args) -> int:
    config = _build_config(args)
    extractor = _build_extractor(config)
    header, rows = experiments.run_threshold_sweep(extractor, config)
    out = _out_dir(config)
    write_csv(out / "threshold_sweep.csv", header, rows)
    print(f"wrote {out / 'threshold_sweep.csv'} ({len(rows)} rows)")
    return 0


def cmd_sample_study(args) -> int:
    config = _build_config(args)
    extractor = _build_extractor(config)
    out = _out_dir(config)
    for mode in args.modes.split(","):
        header, rows = experiments.run_sampling_study(extractor, config, mode)
        write_csv(out / f"sampling_{mode}.csv", header, rows)
        print(f"wrote {out / f'sampling_{mode}.csv'} ({len(rows)} rows)")
    return 0


def cmd_early_detect(args) -> int:
    config = _build_config(args)
    extractor = _build_extractor(config)
    header, rows = experiments.run_early_detection(extractor, config)
    out = _out_dir(config)
    write_csv(out / "early_detection.csv", header, rows)
    print(f"wrote {out / 'early_detection.csv'} ({len(rows)} rows)")
    return 0


def cmd_rank_features(args) -> int:
    config = _build_config(args)
    extractor = _build_extractor(config)
    matrix = _descriptive_matrix(config, extractor)
    ranking = relief_rank(matrix.X, encode_labels(matrix.labels), seed=config.seed)
    out = _out_dir(config)
    rows = [(rank + 1, f + 1, FEATURE_NAMES[f], weight)
            for rank, (f, weight) in enumerate(ranking)]
    write_csv(out / "feature_ranking.csv",
              ("rank", "feature_index", "feature_name", "weight"), rows)
    for rank, index, name, weight in rows[:10]:
        print(f"{rank:>3}  {name} (f{index:03d})  weight={weight:.4f}")
    return 0


def cmd_feature_stats(args) -> int:
    config = _build_config(args)
    extractor = _build_extractor(config)
    matrix = _descriptive_matrix(config, extractor)
    header, rows = experiments.feature_class_stats(matrix)
    out = _out_dir(config)
    write_csv(out / "feature_stats.csv", header, rows)
    print(f"wrote {out / 'feature_stats.csv'} ({len(rows)} rows)")
    return 0


def cmd_synth(args) -> int:
    config = _build_config(args)
    spec_data = dict(config.synthetic)
    if args.seed is not None:
        spec_data["seed"] = args.seed
    if args.strong:
        from .synth import STRONG_EFFECTS

        spec_data.update(STRONG_EFFECTS)
    try:
        spec = SyntheticSpec(**spec_data)
    except TypeError as exc:
        raise ConfigError(f"bad synthetic spec: {exc}") from None
    corpus = generate(spec)
    paths = write_corpus(corpus, config.out)
    print(json.dumps(paths, indent=2))
    return 0


def _add_common(parser) -> None:
    parser.add_argument("--config", help="JSON experiment config")
    parser.add_argument("--seed", type=int, help="master seed")
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--jobs", type=int, help="parallel jobs for grid points")
    parser.add_argument("--edges", help="edges.csv path")
    parser.add_argument("--engagements", help="engagements.csv path")
    parser.add_argument("--labels", help="labels.csv path")
    parser.add_argument("--theta", type=float, help="susceptibility threshold")
    parser.add_argument("--classifier", help="random_forest | decision_tree | knn | gaussian_nb")
    parser.add_argument("--patterns", help="comma-separated pattern subset")
    parser.add_argument("--repetitions", type=int, help="resampling repetitions")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="newsnet",
        description="Fake news detection from diffusion patterns on a follow graph")
    sub = parser.add_subparsers(dest="command", required=True)
    commands = (
        ("ingest", cmd_ingest, "validate a corpus, write canonical copies and stats"),
        ("stats", cmd_stats, "print corpus statistics as JSON"),
        ("extract", cmd_extract, "write the feature matrix and index registry"),
        ("evaluate", cmd_evaluate, "stratified 5-fold cross-validation"),
        ("ablate", cmd_ablate, "evaluate the 17 canonical pattern subsets"),
        ("sweep-threshold", cmd_sweep_threshold, "re-evaluate across thresholds"),
        ("sample-study", cmd_sample_study, "news count / class balance sampling"),
        ("early-detect", cmd_early_detect, "node/edge-subsampled evaluation"),
        ("rank-features", cmd_rank_features, "Relief feature ranking"),
        ("feature-stats", cmd_feature_stats, "per-feature stats split by label"),
        ("synth", cmd_synth, "generate a synthetic corpus"),
    )
    for name, handler, help_text in commands:
        p = sub.add_parser(name, help=help_text)
        _add_common(p)
        if name == "sample-study":
            p.add_argument("--modes", default="news_count,class_balance",
                           help="comma-separated: news_count, class_balance")
        if name == "synth":
            p.add_argument("--strong", action="store_true",
                           help="use the strong planted effect sizes")
        p.set_defaults(handler=handler)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (CorpusError, FileNotFoundError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
