"""Louvain community detection on weighted undirected graphs.

Greedy modularity optimization: seeded node sweeps move nodes to the
neighboring community with the largest modularity gain, then the graph is
aggregated (communities become supernodes, internal weight becomes a
self-loop) and the process repeats. Both loops stop once the modularity gain
drops to <= 1e-7. Deterministic for a given seed: nodes are sorted before the
seeded shuffle and candidate communities are scanned in sorted order.

Directed follow edges are symmetrized first (weight 1 per unordered connected
pair, reciprocal pairs also weight 1).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .util import derive_seed

MIN_GAIN = 1e-7

GLOBAL = "global"
LOCAL = "local"


@dataclass(frozen=True)
class CommunityAssignment:
    communities: dict  # node -> community index (0..k-1)
    modularity: float
    scope: str

    @property
    def n_communities(self) -> int:
        return len(set(self.communities.values()))


def symmetrize(directed_edges) -> list:
    """Unordered connected pairs with weight 1 (reciprocal pairs collapse)."""
    pairs = set()
    for u, v in directed_edges:
        if u == v:
            continue
        pairs.add((u, v) if u <= v else (v, u))
    return [(u, v, 1.0) for u, v in sorted(pairs)]


def modularity(nodes, weighted_edges, partition) -> float:
    """Newman modularity of a partition; each undirected edge counted once."""
    m = 0.0
    degree = {n: 0.0 for n in nodes}
    internal: dict = {}
    total_deg: dict = {}
    for u, v, w in weighted_edges:
        m += w
        if u == v:
            degree[u] += 2.0 * w
        else:
            degree[u] += w
            degree[v] += w
        if partition[u] == partition[v]:
            internal[partition[u]] = internal.get(partition[u], 0.0) + w
    if m == 0.0:
        return 0.0
    for n in nodes:
        c = partition[n]
        total_deg[c] = total_deg.get(c, 0.0) + degree[n]
    q = 0.0
    for c in total_deg:
        q += internal.get(c, 0.0) / m - (total_deg[c] / (2.0 * m)) ** 2
    return q


class _Level:
    """One aggregation level: adjacency with self-loops, community bookkeeping."""

    def __init__(self, n, weighted_edges):
        self.n = n
        self.adj = [dict() for _ in range(n)]
        self.self_w = [0.0] * n
        m = 0.0
        for u, v, w in weighted_edges:
            m += w
            if u == v:
                self.self_w[u] += w
            else:
                self.adj[u][v] = self.adj[u].get(v, 0.0) + w
                self.adj[v][u] = self.adj[v].get(u, 0.0) + w
        self.m = m
        self.k = [sum(self.adj[i].values()) + 2.0 * self.self_w[i] for i in range(n)]
        self.com = list(range(n))
        self.com_tot = list(self.k)
        self.com_in = list(self.self_w)

    def _modularity(self) -> float:
        if self.m == 0.0:
            return 0.0
        q = 0.0
        seen = set()
        for c in self.com:
            if c in seen:
                continue
            seen.add(c)
            q += self.com_in[c] / self.m - (self.com_tot[c] / (2.0 * self.m)) ** 2
        return q

    def sweep(self, order) -> bool:
        """One pass over all nodes; returns True if any node moved."""
        moved = False
        for i in order:
            old = self.com[i]
            neigh = {old: 0.0}
            for j, w in self.adj[i].items():
                neigh[self.com[j]] = neigh.get(self.com[j], 0.0) + w
            # detach i before evaluating gains
            self.com_tot[old] -= self.k[i]
            self.com_in[old] -= neigh[old] + self.self_w[i]
            two_m = 2.0 * self.m
            best_c = old
            best_gain = neigh[old] - self.k[i] * self.com_tot[old] / two_m
            for c in sorted(neigh):
                if c == old:
                    continue
                gain = neigh[c] - self.k[i] * self.com_tot[c] / two_m
                if gain > best_gain:
                    best_gain = gain
                    best_c = c
            self.com[i] = best_c
            self.com_tot[best_c] += self.k[i]
            self.com_in[best_c] += neigh.get(best_c, 0.0) + self.self_w[i]
            if best_c != old:
                moved = True
        return moved

    def optimize(self, rng) -> None:
        if self.m == 0.0:
            return  # edgeless: all singletons, modularity 0
        order = list(range(self.n))
        rng.shuffle(order)
        current = self._modularity()
        while self.sweep(order):
            new = self._modularity()
            if new - current <= MIN_GAIN:
                break
            current = new

    def partition(self) -> list:
        """Community of each node, renumbered to 0..k-1 by node order."""
        relabel: dict = {}
        out = []
        for c in self.com:
            if c not in relabel:
                relabel[c] = len(relabel)
            out.append(relabel[c])
        return out

    def aggregated_edges(self, partition) -> list:
        edges: dict = {}
        for i in range(self.n):
            ci = partition[i]
            if self.self_w[i]:
                key = (ci, ci)
                edges[key] = edges.get(key, 0.0) + self.self_w[i]
            for j, w in self.adj[i].items():
                if i < j:
                    a, b = partition[i], partition[j]
                    key = (a, b) if a <= b else (b, a)
                    edges[key] = edges.get(key, 0.0) + w
        return [(a, b, w) for (a, b), w in sorted(edges.items())]


def louvain(nodes, weighted_edges, seed: int, scope: str = LOCAL) -> CommunityAssignment:
    """Detect communities; nodes without edges end up as singletons."""
    node_list = sorted(set(nodes))
    if not node_list:
        raise ValueError("louvain requires a nonempty node set")
    index = {n: i for i, n in enumerate(node_list)}
    edges = []
    for u, v, w in weighted_edges:
        if u not in index or v not in index:
            raise ValueError(f"edge ({u!r}, {v!r}) references an unknown node")
        edges.append((index[u], index[v], float(w)))

    assignment = list(range(len(node_list)))  # original node -> community label
    level_edges = edges
    level_n = len(node_list)
    best_q = None
    level_no = 0
    while True:
        level = _Level(level_n, level_edges)
        level.optimize(random.Random(derive_seed(seed, "louvain", level_no)))
        part = level.partition()
        assignment = [part[assignment[i]] for i in range(len(node_list))]
        q = level._modularity()
        if best_q is not None and q - best_q <= MIN_GAIN:
            break
        best_q = q
        n_coms = max(part) + 1
        if n_coms == level_n:  # nothing merged; a further level cannot improve
            break
        level_edges = level.aggregated_edges(part)
        level_n = n_coms
        level_no += 1

    # canonical community ids: first appearance over sorted nodes
    relabel: dict = {}
    communities = {}
    for i, node in enumerate(node_list):
        c = assignment[i]
        if c not in relabel:
            relabel[c] = len(relabel)
        communities[node] = relabel[c]
    q = modularity(node_list, [(node_list[u], node_list[v], w) for u, v, w in edges],
                   communities)
    return CommunityAssignment(communities=communities, modularity=q, scope=scope)


def global_communities(graph, seed: int) -> CommunityAssignment:
    assign = louvain(graph.nodes, symmetrize(graph.edges), seed, scope=GLOBAL)
    return assign


def local_communities(network, seed: int) -> CommunityAssignment:
    return louvain(network.nodes, symmetrize(network.edges), seed, scope=LOCAL)


def write_communities(assignment: CommunityAssignment, path) -> None:
    from .util import write_csv

    write_csv(path, ("node_id", "community"),
              [(n, assignment.communities[n]) for n in sorted(assignment.communities)])
