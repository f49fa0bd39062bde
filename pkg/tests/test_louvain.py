from itertools import combinations

import pytest

from newsnet.corpus import SocialGraph
from newsnet.louvain import (CommunityAssignment, global_communities, louvain,
                             modularity, symmetrize)

from oracles import best_partition, matrix_modularity, random_corpus


def _clique_edges(nodes):
    return [(u, v, 1.0) for u, v in combinations(nodes, 2)]


def test_two_cliques_found_exactly():
    left = [f"a{i}" for i in range(4)]
    right = [f"b{i}" for i in range(4)]
    edges = _clique_edges(left) + _clique_edges(right)
    assign = louvain(left + right, edges, seed=1)
    assert assign.n_communities == 2
    assert len({assign.communities[v] for v in left}) == 1
    assert len({assign.communities[v] for v in right}) == 1
    # matches the exhaustive modularity optimum
    best, best_q = best_partition(left + right, edges)
    assert assign.modularity == pytest.approx(best_q, abs=1e-9)
    best_sets = {frozenset(group) for group in best}
    assert best_sets == {frozenset(left), frozenset(right)}


def test_edgeless_graph_all_singletons():
    nodes = [f"n{i}" for i in range(7)]
    assign = louvain(nodes, [], seed=3)
    assert assign.n_communities == 7
    assert assign.modularity == 0.0


def test_single_clique_one_community():
    nodes = [f"c{i}" for i in range(6)]
    edges = _clique_edges(nodes)
    assign = louvain(nodes, edges, seed=2)
    assert assign.n_communities == 1
    _, best_q = best_partition(nodes, edges)
    assert assign.modularity == pytest.approx(best_q, abs=1e-9)


def test_deterministic_given_seed():
    graph, _ = random_corpus(11)
    edges = symmetrize(graph.edges)
    a1 = louvain(graph.nodes, edges, seed=9)
    a2 = louvain(graph.nodes, edges, seed=9)
    assert a1.communities == a2.communities
    assert a1.modularity == a2.modularity


def test_modularity_beats_singletons():
    for seed in range(6):
        graph, _ = random_corpus(seed)
        edges = symmetrize(graph.edges)
        assign = louvain(graph.nodes, edges, seed=seed)
        singletons = {v: i for i, v in enumerate(sorted(graph.nodes))}
        base = modularity(sorted(graph.nodes), edges, singletons)
        assert assign.modularity >= base - 1e-12
        assert -0.5 <= assign.modularity <= 1.0


def test_modularity_agrees_with_matrix_form():
    for seed in range(5):
        graph, _ = random_corpus(seed)
        edges = symmetrize(graph.edges)
        assign = louvain(graph.nodes, edges, seed=seed)
        groups: dict = {}
        for node, com in assign.communities.items():
            groups.setdefault(com, []).append(node)
        q = matrix_modularity(sorted(graph.nodes), edges, list(groups.values()))
        assert assign.modularity == pytest.approx(q, abs=1e-9)


def test_symmetrize_collapses_reciprocal():
    edges = symmetrize([("a", "b"), ("b", "a"), ("b", "c")])
    assert edges == [("a", "b", 1.0), ("b", "c", 1.0)]


def test_global_scope_covers_isolated_nodes():
    graph = SocialGraph.from_edges([("a", "b")], nodes=["a", "b", "c"])
    assign = global_communities(graph, seed=0)
    assert isinstance(assign, CommunityAssignment)
    assert assign.scope == "global"
    assert set(assign.communities) == {"a", "b", "c"}
