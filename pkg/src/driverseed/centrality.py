"""Node and edge centralities used by the ranking strategies and by the
divisive community detector.

All node centralities are normalized to [0, 1] so that the combined
degree/closeness/betweenness score mixes commensurate quantities:

* degree:      deg(v) / (n - 1)
* closeness:   ((r - 1)/(n - 1)) * ((r - 1) / sum of distances), where r is
               the size of v's connected component (component-scaled form, so
               disconnected graphs compare meaningfully); isolated nodes -> 0
* betweenness: pair-dependency sum over unordered pairs, divided by
               (n - 1)(n - 2)/2

Edge betweenness is returned unnormalized: the number of shortest paths
(fractionally, over all ties) between unordered node pairs that traverse the
edge.

Shortest-path accumulation follows the standard single-source dependency
scheme. Graphs up to ``DENSE_NODE_LIMIT`` nodes run a vectorized
all-sources variant on a dense adjacency matrix; larger graphs fall back to
a per-source sparse traversal with identical results. Both paths visit
sources in fixed order, so results are bit-stable.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .graph import Graph

# Above this the n x n work matrices stop being worth their memory.
DENSE_NODE_LIMIT = 2048

CENTRALITY_KINDS = ("degree", "closeness", "betweenness")


@dataclass(frozen=True)
class CentralityScores:
    """Per-node scores of one centrality kind, normalized to [0, 1]."""

    kind: str
    values: tuple[float, ...]

    def top(self, k: int) -> list[int]:
        order = sorted(range(len(self.values)), key=lambda v: (-self.values[v], v))
        return order[:k]


def degree_centrality(g: Graph) -> CentralityScores:
    """deg(v) / (n - 1); zeros on degenerate graphs with n < 2."""
    if g.n < 2:
        return CentralityScores("degree", (0.0,) * g.n)
    denom = g.n - 1
    return CentralityScores("degree", tuple(d / denom for d in g.degrees()))


def closeness_centrality(g: Graph) -> CentralityScores:
    """Component-scaled closeness; isolated nodes score 0."""
    if g.n < 2:
        return CentralityScores("closeness", (0.0,) * g.n)
    if g.n <= DENSE_NODE_LIMIT:
        dist = _distance_matrix_dense(_adjacency_matrix(g))
        reach = dist >= 0
        r = reach.sum(axis=1)  # includes self
        sums = np.where(reach, dist, 0).sum(axis=1)
        vals = np.zeros(g.n)
        ok = (r > 1) & (sums > 0)
        vals[ok] = ((r[ok] - 1) / (g.n - 1)) * ((r[ok] - 1) / sums[ok])
        return CentralityScores("closeness", tuple(float(x) for x in vals))
    values = []
    for s in range(g.n):
        dist = _bfs_distances(g, s)
        reachable = [d for d in dist if d >= 0]
        r = len(reachable)
        total = sum(reachable)
        values.append(((r - 1) / (g.n - 1)) * ((r - 1) / total) if r > 1 and total else 0.0)
    return CentralityScores("closeness", tuple(values))


def betweenness_centrality(g: Graph) -> CentralityScores:
    """Shortest-path betweenness over unordered pairs, normalized to [0, 1]."""
    if g.n < 3:
        return CentralityScores("betweenness", (0.0,) * g.n)
    if g.n <= DENSE_NODE_LIMIT:
        node_acc, _ = _brandes_dense(_adjacency_matrix(g), want_edges=False)
    else:
        node_acc, _ = _brandes_sparse(g.adjacency_sets(), want_edges=False)
    norm = (g.n - 1) * (g.n - 2) / 2.0
    return CentralityScores("betweenness", tuple(float(x) / 2.0 / norm for x in node_acc))


def edge_betweenness(g: Graph) -> dict[tuple[int, int], float]:
    """Unnormalized shortest-path load per edge, keyed by (u, v) with u < v."""
    if g.m == 0:
        return {}
    if g.n <= DENSE_NODE_LIMIT:
        _, eb = _brandes_dense(_adjacency_matrix(g), want_edges=True)
        return {(u, v): float(eb[u, v]) for u, v in g.edges()}
    _, eb = _brandes_sparse(g.adjacency_sets(), want_edges=True)
    return {e: eb[e] for e in g.edges()}


# ---------------------------------------------------------------------------
# dense (vectorized, all sources at once) path


def _adjacency_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    for u, v in g.edges():
        a[u, v] = 1.0
        a[v, u] = 1.0
    return a


def _distance_matrix_dense(a: np.ndarray) -> np.ndarray:
    """All-pairs BFS distances; -1 where unreachable."""
    n = a.shape[0]
    dist = np.full((n, n), -1, dtype=np.int64)
    np.fill_diagonal(dist, 0)
    frontier = np.eye(n, dtype=bool)
    reached = frontier.copy()
    level = 0
    while True:
        nxt = (frontier.astype(float) @ a > 0) & ~reached
        if not nxt.any():
            return dist
        level += 1
        dist[nxt] = level
        reached |= nxt
        frontier = nxt


def _brandes_dense(a: np.ndarray, want_edges: bool) -> tuple[np.ndarray, np.ndarray | None]:
    """Run the dependency accumulation from every source simultaneously.

    Row s of each work matrix holds the per-source state for source s.
    Returns raw accumulations: per unordered pair each dependency is counted
    twice (once from each endpoint as source), so callers halve the totals.
    """
    n = a.shape[0]
    sigma = np.zeros((n, n))
    np.fill_diagonal(sigma, 1.0)
    frontier = np.eye(n, dtype=bool)
    reached = frontier.copy()
    levels = [frontier]
    while True:
        paths = (sigma * levels[-1]) @ a
        nxt = (paths > 0) & ~reached
        if not nxt.any():
            break
        sigma[nxt] = paths[nxt]
        reached |= nxt
        levels.append(nxt)

    delta = np.zeros((n, n))
    eb = np.zeros((n, n)) if want_edges else None
    for depth in range(len(levels) - 2, -1, -1):
        here, above = levels[depth], levels[depth + 1]
        coeff = np.zeros((n, n))
        coeff[above] = (1.0 + delta[above]) / sigma[above]
        if want_edges:
            eb += ((sigma * here).T @ coeff) * a
        contrib = (coeff @ a) * sigma
        delta[here] += contrib[here]

    node_acc = delta.sum(axis=0) - np.diag(delta)
    if want_edges:
        eb = (eb + eb.T) / 2.0
    return node_acc, eb


# ---------------------------------------------------------------------------
# sparse (per-source) fallback for graphs past the dense limit


def _bfs_distances(g: Graph, source: int) -> list[int]:
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def _brandes_sparse(
    adj: list[set[int]], want_edges: bool
) -> tuple[list[float], dict[tuple[int, int], float]]:
    n = len(adj)
    node_acc = [0.0] * n
    edge_acc: dict[tuple[int, int], float] = {}
    for s in range(n):
        stack: list[int] = []
        preds: list[list[int]] = [[] for _ in range(n)]
        sigma = [0.0] * n
        dist = [-1] * n
        sigma[s] = 1.0
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            stack.append(v)
            for w in adj[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = [0.0] * n
        while stack:
            w = stack.pop()
            coeff = (1.0 + delta[w]) / sigma[w]
            for v in preds[w]:
                share = sigma[v] * coeff
                delta[v] += share
                if want_edges:
                    key = (v, w) if v < w else (w, v)
                    edge_acc[key] = edge_acc.get(key, 0.0) + share
            if w != s:
                node_acc[w] += delta[w]
    if want_edges:
        edge_acc = {k: v / 2.0 for k, v in edge_acc.items()}
    return node_acc, edge_acc


def _edge_scores_matrix(a: np.ndarray) -> np.ndarray:
    """Edge-betweenness matrix for a working dense adjacency (used by the
    community detector, which removes edges in place)."""
    _, eb = _brandes_dense(a, want_edges=True)
    return eb


def _edge_scores_adj(adj: list[set[int]]) -> dict[tuple[int, int], float]:
    """Edge-betweenness dict for a working adjacency-set structure."""
    _, eb = _brandes_sparse(adj, want_edges=True)
    return eb
