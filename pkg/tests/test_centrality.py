import random

import pytest

from driverseed import centrality as ct
from driverseed.centrality import (
    betweenness_centrality,
    closeness_centrality,
    degree_centrality,
    edge_betweenness,
)
from driverseed.graph import Graph

from oracles import (
    oracle_betweenness,
    oracle_closeness,
    oracle_degree,
    oracle_edge_betweenness,
    random_graph,
)


def complete(n):
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star(leaves):
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


PATH3 = Graph(3, [(0, 1), (1, 2)])


# --- degree -----------------------------------------------------------------

def test_degree_complete():
    assert degree_centrality(complete(4)).values == (1.0, 1.0, 1.0, 1.0)


def test_degree_star():
    vals = degree_centrality(star(4)).values
    assert vals[0] == pytest.approx(1.0)
    assert vals[1] == pytest.approx(0.25)


def test_degree_path():
    vals = degree_centrality(PATH3).values
    assert vals[1] == pytest.approx(1.0)
    assert vals[0] == pytest.approx(0.5)


# --- closeness --------------------------------------------------------------

def test_closeness_complete():
    assert closeness_centrality(complete(5)).values == pytest.approx((1.0,) * 5)


def test_closeness_path():
    vals = closeness_centrality(PATH3).values
    assert vals[0] == pytest.approx(2 / 3)
    assert vals[1] == pytest.approx(1.0)


def test_closeness_two_disjoint_edges():
    g = Graph(4, [(0, 1), (2, 3)])
    assert closeness_centrality(g).values == pytest.approx((1 / 3,) * 4)


def test_closeness_isolated_node_scores_zero():
    g = Graph(3, [(0, 1)])
    assert closeness_centrality(g).values[2] == 0.0


# --- betweenness ------------------------------------------------------------

def test_betweenness_path_center():
    vals = betweenness_centrality(PATH3).values
    assert vals == pytest.approx((0.0, 1.0, 0.0))


def test_betweenness_complete_is_zero():
    assert betweenness_centrality(complete(4)).values == pytest.approx((0.0,) * 4)


def test_edge_betweenness_single_edge():
    g = Graph(2, [(0, 1)])
    assert edge_betweenness(g)[(0, 1)] == pytest.approx(1.0)


def test_edge_betweenness_path_edges():
    scores = edge_betweenness(PATH3)
    assert scores[(0, 1)] == pytest.approx(2.0)
    assert scores[(1, 2)] == pytest.approx(2.0)


def test_edge_betweenness_bridge_is_strict_max():
    g = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])
    scores = edge_betweenness(g)
    bridge = scores[(2, 3)]
    assert all(v < bridge for e, v in scores.items() if e != (2, 3))
    oracle = oracle_edge_betweenness(g)
    for e, v in scores.items():
        assert v == pytest.approx(oracle[e], abs=1e-9)


# --- oracle agreement and invariants ----------------------------------------

def test_all_centralities_match_oracles_on_small_graphs():
    rng = random.Random(99)
    for _ in range(60):
        g = random_graph(rng, rng.randint(2, 8), rng.uniform(0.1, 0.95))
        assert degree_centrality(g).values == pytest.approx(oracle_degree(g), abs=1e-9)
        assert closeness_centrality(g).values == pytest.approx(oracle_closeness(g), abs=1e-9)
        assert betweenness_centrality(g).values == pytest.approx(
            oracle_betweenness(g), abs=1e-9
        )
        eb = edge_betweenness(g)
        oeb = oracle_edge_betweenness(g)
        for e in g.edges():
            assert eb[e] == pytest.approx(oeb[e], abs=1e-9)


def test_sparse_path_equals_dense_path(monkeypatch):
    rng = random.Random(5)
    graphs = [random_graph(rng, rng.randint(3, 12), rng.uniform(0.2, 0.8)) for _ in range(10)]
    dense = [
        (betweenness_centrality(g).values, closeness_centrality(g).values, edge_betweenness(g))
        for g in graphs
    ]
    monkeypatch.setattr(ct, "DENSE_NODE_LIMIT", 0)
    for g, (bd, cd, ed) in zip(graphs, dense):
        assert betweenness_centrality(g).values == pytest.approx(bd, abs=1e-12)
        assert closeness_centrality(g).values == pytest.approx(cd, abs=1e-12)
        es = edge_betweenness(g)
        for e in g.edges():
            assert es[e] == pytest.approx(ed[e], abs=1e-12)


def test_relabeling_invariance():
    rng = random.Random(21)
    for _ in range(10):
        g = random_graph(rng, 9, 0.4)
        perm = list(range(g.n))
        rng.shuffle(perm)
        g2 = Graph(g.n, [(perm[u], perm[v]) for u, v in g.edges()])
        for fn in (degree_centrality, closeness_centrality, betweenness_centrality):
            a, b = fn(g).values, fn(g2).values
            for v in range(g.n):
                assert a[v] == pytest.approx(b[perm[v]], abs=1e-9)


def test_tree_edge_scores_sum_to_pair_distances():
    # in a tree each pair has one path, so edge loads sum to sum of distances
    rng = random.Random(13)
    for _ in range(10):
        n = rng.randint(2, 12)
        edges = [(rng.randrange(i), i) for i in range(1, n)]
        g = Graph(n, edges)
        total = sum(edge_betweenness(g).values())
        from oracles import bfs_distances

        pair_dist = (
            sum(sum(d for d in bfs_distances(g, s)[s + 1 :]) for s in range(n))
        )
        assert total == pytest.approx(pair_dist, abs=1e-9)


def test_degenerate_graphs_score_zero():
    g = Graph(1, [])
    assert degree_centrality(g).values == (0.0,)
    assert closeness_centrality(g).values == (0.0,)
    assert betweenness_centrality(g).values == (0.0,)
    assert edge_betweenness(g) == {}
