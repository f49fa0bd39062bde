"""Eight node-influence measures on the directed follow graph.

Computed once on the full social graph; per-network features later restrict
the score maps to a network's spreader set. Conventions:

  - degrees are raw edge counts
  - closeness(v) = (reachable count) / (sum of distances), over the nodes
    actually reachable from / to v; 0 when nothing is reachable
  - betweenness is the unnormalized Brandes accumulation over ordered pairs,
    with exact integer shortest-path counting
  - PageRank: damping 0.85, uniform teleport, dangling mass redistributed,
    power iteration until L1 residual < 1e-10 (max 200 iterations); sums to 1
  - hub/authority: mutually reinforcing power iteration, L2-normalized each
    step, same stopping rule; zero vectors on an edgeless graph
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .corpus import SocialGraph

MEASURES = (
    "in_degree",
    "out_degree",
    "in_closeness",
    "out_closeness",
    "betweenness",
    "pagerank",
    "hub",
    "authority",
)

DAMPING = 0.85
TOLERANCE = 1e-10
MAX_ITER = 200


@dataclass(frozen=True)
class CentralityScores:
    scores: dict  # measure name -> {node: value}

    def of(self, measure: str) -> dict:
        return self.scores[measure]


def _bfs_distances(start, neighbors) -> dict:
    dist = {start: 0}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in neighbors[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def _closeness(nodes, neighbors) -> dict:
    out = {}
    for v in nodes:
        dist = _bfs_distances(v, neighbors)
        reachable = len(dist) - 1
        total = sum(dist.values())
        out[v] = reachable / total if total > 0 else 0.0
    return out


def _betweenness(nodes, out_neighbors) -> dict:
    # Brandes (2001) with integer sigma and reverse-order dependency passes.
    bc = {v: 0.0 for v in nodes}
    for s in nodes:
        stack = []
        preds = {v: [] for v in nodes}
        sigma = {v: 0 for v in nodes}
        dist = {v: -1 for v in nodes}
        sigma[s] = 1
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            stack.append(u)
            for w in sorted(out_neighbors[u]):
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
                if dist[w] == dist[u] + 1:
                    sigma[w] += sigma[u]
                    preds[w].append(u)
        delta = {v: 0.0 for v in nodes}
        while stack:
            w = stack.pop()
            for u in preds[w]:
                delta[u] += sigma[u] / sigma[w] * (1.0 + delta[w])
            if w != s:
                bc[w] += delta[w]
    return bc


def _pagerank(nodes, out_neighbors) -> dict:
    n = len(nodes)
    ranks = {v: 1.0 / n for v in nodes}
    out_deg = {v: len(out_neighbors[v]) for v in nodes}
    dangling = [v for v in nodes if out_deg[v] == 0]
    for _ in range(MAX_ITER):
        dangling_mass = sum(ranks[v] for v in dangling)
        base = (1.0 - DAMPING) / n + DAMPING * dangling_mass / n
        new = {v: base for v in nodes}
        for u in nodes:
            if out_deg[u]:
                share = DAMPING * ranks[u] / out_deg[u]
                for v in sorted(out_neighbors[u]):
                    new[v] += share
        residual = sum(abs(new[v] - ranks[v]) for v in nodes)
        ranks = new
        if residual < TOLERANCE:
            break
    return ranks


def _hits(nodes, out_neighbors, in_neighbors) -> tuple:
    n = len(nodes)
    if not any(out_neighbors[v] for v in nodes):
        zeros = {v: 0.0 for v in nodes}
        return dict(zeros), dict(zeros)
    norm0 = n ** 0.5
    hubs = {v: 1.0 / norm0 for v in nodes}
    auths = {v: 1.0 / norm0 for v in nodes}
    for _ in range(MAX_ITER):
        new_a = {v: sum(hubs[u] for u in sorted(in_neighbors[v])) for v in nodes}
        norm = sum(x * x for x in new_a.values()) ** 0.5
        if norm == 0.0:
            new_a = {v: 0.0 for v in nodes}
        else:
            new_a = {v: x / norm for v, x in new_a.items()}
        new_h = {v: sum(new_a[w] for w in sorted(out_neighbors[v])) for v in nodes}
        norm = sum(x * x for x in new_h.values()) ** 0.5
        if norm == 0.0:
            new_h = {v: 0.0 for v in nodes}
        else:
            new_h = {v: x / norm for v, x in new_h.items()}
        residual = sum(abs(new_a[v] - auths[v]) for v in nodes)
        residual += sum(abs(new_h[v] - hubs[v]) for v in nodes)
        auths, hubs = new_a, new_h
        if residual < TOLERANCE:
            break
    return hubs, auths


def centralities(graph: SocialGraph) -> CentralityScores:
    if not graph.nodes:
        raise ValueError("centralities require a nonempty graph")
    nodes = graph.sorted_nodes()
    out_nbrs = graph.out_neighbors
    in_nbrs = graph.in_neighbors
    hubs, auths = _hits(nodes, out_nbrs, in_nbrs)
    return CentralityScores(scores={
        "in_degree": {v: float(len(in_nbrs[v])) for v in nodes},
        "out_degree": {v: float(len(out_nbrs[v])) for v in nodes},
        "in_closeness": _closeness(nodes, in_nbrs),
        "out_closeness": _closeness(nodes, out_nbrs),
        "betweenness": _betweenness(nodes, out_nbrs),
        "pagerank": _pagerank(nodes, out_nbrs),
        "hub": hubs,
        "authority": auths,
    })


def write_centralities(scores: CentralityScores, path) -> None:
    from .util import write_csv

    nodes = sorted(scores.of("in_degree"))
    rows = [[v] + [scores.of(m)[v] for m in MEASURES] for v in nodes]
    write_csv(path, ("user_id",) + MEASURES, rows)
