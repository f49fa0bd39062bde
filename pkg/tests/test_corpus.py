import json

import pytest

from newsnet.corpus import (CorpusError, EngagementTable, SocialGraph, corpus_stats,
                            load_corpus, save_corpus)
from newsnet.synth import SyntheticSpec, generate, write_corpus

from oracles import random_corpus


def write_corpus_files(tmp_path, edge_rows, engagement_rows, label_rows):
    edges = tmp_path / "edges.csv"
    engagements = tmp_path / "engagements.csv"
    labels = tmp_path / "labels.csv"
    edges.write_text("follower,followee\n" + "".join(f"{a},{b}\n" for a, b in edge_rows))
    engagements.write_text("news_id,user_id,count\n"
                           + "".join(f"{n},{u},{c}\n" for n, u, c in engagement_rows))
    labels.write_text("news_id,label\n" + "".join(f"{n},{l}\n" for n, l in label_rows))
    return edges, engagements, labels


def test_load_simple_corpus(tmp_path):
    paths = write_corpus_files(
        tmp_path,
        [("u1", "u2"), ("u2", "u1"), ("u2", "u3")],
        [("n1", "u1", 2), ("n1", "u2", 1), ("n2", "u3", 1)],
        [("n1", "fake"), ("n2", "true")],
    )
    graph, table = load_corpus(*paths)
    assert graph.nodes == {"u1", "u2", "u3"}
    assert ("u1", "u2") in graph.edges and ("u2", "u1") in graph.edges
    assert table.counts["n1"] == {"u1": 2, "u2": 1}
    assert table.labels == {"n1": "fake", "n2": "true"}


def test_empty_engagements_gives_zero_news(tmp_path):
    paths = write_corpus_files(tmp_path, [("u1", "u2")], [], [])
    graph, table = load_corpus(*paths)
    assert table.n_records == 0
    assert len(table.labels) == 0
    stats = corpus_stats(graph, table)
    assert stats.n_news == 0 and stats.n_fake == 0 and stats.n_true == 0


def test_duplicate_engagement_rows_sum(tmp_path):
    paths = write_corpus_files(
        tmp_path,
        [("u1", "u2")],
        [("n1", "u1", 2), ("n1", "u1", 3)],
        [("n1", "fake")],
    )
    _, table = load_corpus(*paths)
    assert table.counts["n1"]["u1"] == 5
    assert table.n_records == 1


def test_self_loop_and_duplicate_edges_dropped(tmp_path, caplog):
    paths = write_corpus_files(
        tmp_path,
        [("u1", "u1"), ("u1", "u2"), ("u1", "u2"), ("u2", "u3")],
        [],
        [],
    )
    with caplog.at_level("WARNING"):
        graph, _ = load_corpus(*paths)
    assert graph.edges == {("u1", "u2"), ("u2", "u3")}
    messages = " ".join(r.getMessage() for r in caplog.records)
    assert "1 self-loop" in messages and "1 duplicate" in messages


@pytest.mark.parametrize("rows,expected", [
    ([("n1", "u1", "x")], "integer"),
    ([("n1", "u1", "0")], ">= 1"),
    ([("n1", "u9", "1")], "unknown user"),
    ([("n9", "u1", "1")], "unlabeled news"),
])
def test_malformed_engagements_raise(tmp_path, rows, expected):
    paths = write_corpus_files(tmp_path, [("u1", "u2")], rows, [("n1", "fake")])
    with pytest.raises(CorpusError) as err:
        load_corpus(*paths)
    assert expected in str(err.value)
    assert ":2:" in str(err.value)  # line number reported


def test_conflicting_label_raises(tmp_path):
    paths = write_corpus_files(tmp_path, [("u1", "u2")], [],
                               [("n1", "fake"), ("n1", "true")])
    with pytest.raises(CorpusError, match="conflicting label"):
        load_corpus(*paths)


def test_bad_header_raises(tmp_path):
    paths = write_corpus_files(tmp_path, [], [], [])
    paths[0].write_text("src,dst\nu1,u2\n")
    with pytest.raises(CorpusError, match="header"):
        load_corpus(*paths)


def test_wrong_column_count_reports_line(tmp_path):
    paths = write_corpus_files(tmp_path, [], [], [])
    paths[0].write_text("follower,followee\nu1,u2\nu3\n")
    with pytest.raises(CorpusError, match="edges.csv:3"):
        load_corpus(*paths)


def test_round_trip(tmp_path):
    graph, table = random_corpus(seed=5)
    paths = (tmp_path / "e.csv", tmp_path / "g.csv", tmp_path / "l.csv")
    save_corpus(graph, table, *paths)
    graph2, table2 = load_corpus(*paths)
    # user set differs only by isolated users, which edges.csv cannot carry
    assert graph2.edges == graph.edges
    assert table2.counts == table.counts
    assert table2.labels == table.labels


def test_synthetic_round_trip_exact(tmp_path):
    corpus = generate(SyntheticSpec(n_users=40, news_per_class=5, seed=3))
    write_corpus(corpus, tmp_path)
    graph, table = load_corpus(tmp_path / "edges.csv", tmp_path / "engagements.csv",
                               tmp_path / "labels.csv")
    assert graph == corpus.graph  # generator guarantees no isolated users
    assert table == corpus.table


def test_stats_single_user_no_edges():
    graph = SocialGraph.from_edges([], nodes=["u1"])
    table = EngagementTable.from_records({("n1", "u1"): 1}, {"n1": "fake"})
    stats = corpus_stats(graph, table)
    assert (stats.n_users, stats.n_follow_edges, stats.n_engagement_records,
            stats.n_news, stats.n_fake, stats.n_true) == (1, 0, 1, 1, 1, 0)


def test_stats_match_generator_bookkeeping():
    corpus = generate(SyntheticSpec(n_users=100, news_per_class=10, seed=9))
    stats = corpus_stats(corpus.graph, corpus.table)
    truth = corpus.truth
    assert stats.n_users == truth["n_users"]
    assert stats.n_follow_edges == truth["n_follow_edges"]
    assert stats.n_engagement_records == truth["n_engagement_records"]
    assert stats.n_news == truth["n_news"]
    assert stats.n_fake == truth["n_fake"]
    assert stats.n_true == truth["n_true"]


def test_stats_json_fields():
    graph = SocialGraph.from_edges([("u1", "u2")])
    table = EngagementTable.from_records({("n1", "u1"): 1}, {"n1": "true"})
    data = json.loads(corpus_stats(graph, table).to_json())
    assert set(data) == {"n_users", "n_follow_edges", "n_engagement_records",
                         "n_news", "n_fake", "n_true"}
