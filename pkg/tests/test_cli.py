import json
import os
import subprocess
import sys

import pytest

from newsnet.cli import main
from newsnet.synth import SyntheticSpec, generate, write_corpus


@pytest.fixture(scope="module")
def corpus_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("corpus")
    corpus = generate(SyntheticSpec(n_users=60, news_per_class=8, seed=19,
                                    spreader_ratio=2.5, engagement_ratio=2.0))
    write_corpus(corpus, out)
    return out


def _corpus_flags(corpus_dir):
    return ["--edges", str(corpus_dir / "edges.csv"),
            "--engagements", str(corpus_dir / "engagements.csv"),
            "--labels", str(corpus_dir / "labels.csv")]


def test_synth_and_ingest(tmp_path, capsys):
    out = tmp_path / "synthetic"
    assert main(["synth", "--out", str(out), "--seed", "3"]) == 0
    assert (out / "edges.csv").is_file()
    assert (out / "truth.json").is_file()

    stats_out = tmp_path / "ingested"
    code = main(["ingest", "--edges", str(out / "edges.csv"),
                 "--engagements", str(out / "engagements.csv"),
                 "--labels", str(out / "labels.csv"), "--out", str(stats_out)])
    assert code == 0
    stats = json.loads((stats_out / "stats.json").read_text())
    assert stats["n_news"] == 100
    assert (stats_out / "edges.csv").is_file()


def test_stats_prints_json(corpus_dir, capsys):
    assert main(["stats"] + _corpus_flags(corpus_dir)) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["n_news"] == 16


def test_extract_writes_matrix_and_registry(corpus_dir, tmp_path):
    out = tmp_path / "features"
    assert main(["extract"] + _corpus_flags(corpus_dir) + ["--out", str(out)]) == 0
    lines = (out / "features.csv").read_text().strip().splitlines()
    assert len(lines) == 17  # header + 16 news
    registry = json.loads((out / "feature_registry.json").read_text())
    assert len(registry) == 142
    assert registry[0] == {"index": 1, "name": "n_spreaders",
                           "pattern": "more_spreaders"}


def test_evaluate_and_rank(corpus_dir, tmp_path, capsys):
    out = tmp_path / "eval"
    assert main(["evaluate"] + _corpus_flags(corpus_dir)
                + ["--out", str(out), "--seed", "5"]) == 0
    report = json.loads((out / "evaluation.json").read_text())
    assert report["classifier"] == "random_forest"
    assert len(report["fold_accuracy"]) == 5

    assert main(["rank-features"] + _corpus_flags(corpus_dir)
                + ["--out", str(out), "--seed", "5"]) == 0
    ranking = (out / "feature_ranking.csv").read_text().strip().splitlines()
    assert ranking[0] == "rank,feature_index,feature_name,weight"
    assert len(ranking) == 143


def test_grid_commands_with_config(corpus_dir, tmp_path):
    config = {
        "edges": str(corpus_dir / "edges.csv"),
        "engagements": str(corpus_dir / "engagements.csv"),
        "labels": str(corpus_dir / "labels.csv"),
        "seed": 9,
        "repetitions": 1,
        "proportions": [1.0],
        "theta_grid": [0.3, 0.7],
        "sweep_subsets": ["farther_distance"],
        "balance_fractions": [0.5],
        "modes": ["edges"],
        "out": str(tmp_path / "grid"),
    }
    config_path = tmp_path / "config.json"
    config_path.write_text(json.dumps(config))
    assert main(["sweep-threshold", "--config", str(config_path)]) == 0
    assert main(["early-detect", "--config", str(config_path)]) == 0
    assert main(["sample-study", "--config", str(config_path),
                 "--modes", "news_count"]) == 0
    assert main(["feature-stats", "--config", str(config_path)]) == 0
    out = tmp_path / "grid"
    sweep = (out / "threshold_sweep.csv").read_text().strip().splitlines()
    assert sweep[0] == "theta,subset,accuracy,f1"
    assert len(sweep) == 3
    assert (out / "early_detection.csv").is_file()
    assert (out / "sampling_news_count.csv").is_file()
    assert (out / "feature_stats.csv").is_file()


def test_exit_code_input_error(tmp_path, capsys):
    code = main(["stats", "--edges", str(tmp_path / "missing.csv"),
                 "--engagements", str(tmp_path / "missing.csv"),
                 "--labels", str(tmp_path / "missing.csv")])
    assert code == 1


def test_exit_code_config_error(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"classifier": "svm"}')
    assert main(["stats", "--config", str(bad)]) == 2
    missing_paths = tmp_path / "empty.json"
    missing_paths.write_text("{}")
    assert main(["evaluate", "--config", str(missing_paths)]) == 2


def test_malformed_corpus_exit_one(tmp_path):
    (tmp_path / "edges.csv").write_text("follower,followee\nu1,u1\n")
    (tmp_path / "engagements.csv").write_text("news_id,user_id,count\nn1,u9,1\n")
    (tmp_path / "labels.csv").write_text("news_id,label\nn1,fake\n")
    assert main(["stats"] + _corpus_flags(tmp_path)) == 1


def test_byte_identical_across_hash_seeds(corpus_dir, tmp_path):
    """Re-running in fresh interpreters with different hash seeds must agree."""
    outputs = []
    for hash_seed in ("1", "2"):
        out = tmp_path / f"run{hash_seed}"
        env = dict(os.environ, PYTHONHASHSEED=hash_seed)
        cmd = [sys.executable, "-m", "newsnet.cli", "evaluate",
               "--seed", "5", "--out", str(out)] + _corpus_flags(corpus_dir)
        proc = subprocess.run(cmd, env=env, capture_output=True, text=True)
        assert proc.returncode == 0, proc.stderr
        outputs.append((out / "evaluation.json").read_bytes())
    assert outputs[0] == outputs[1]
