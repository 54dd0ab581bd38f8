import random

import pytest

from driverseed.community import (
    InvalidTargetError,
    UndefinedModularityError,
    average_community_density,
    girvan_newman,
    modularity,
    partition_from_communities,
)
from driverseed.generators import GeneratorSpec, generate
from driverseed.graph import Graph, read_edge_list

from oracles import random_graph


def two_triangles_with_bridge():
    return Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])


def clique_pair(a, b):
    """Two cliques joined by one bridge edge (0 .. a-1) -- (a .. a+b-1)."""
    edges = [(i, j) for i in range(a) for j in range(i + 1, a)]
    edges += [(a + i, a + j) for i in range(b) for j in range(i + 1, b)]
    edges.append((0, a))
    return Graph(a + b, edges)


# --- modularity ---------------------------------------------------------------

def test_modularity_single_community_is_zero():
    rng = random.Random(3)
    for _ in range(10):
        g = random_graph(rng, rng.randint(3, 15), 0.5)
        if g.m == 0:
            continue
        assert modularity(g, [tuple(range(g.n))]) == pytest.approx(0.0, abs=1e-12)


def test_modularity_two_disjoint_triangles():
    g = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    q = modularity(g, [(0, 1, 2), (3, 4, 5)])
    assert q == pytest.approx(0.5)


def test_modularity_singletons_on_triangle():
    g = Graph(3, [(0, 1), (1, 2), (0, 2)])
    q = modularity(g, [(0,), (1,), (2,)])
    assert q == pytest.approx(-1 / 3)


def test_modularity_needs_edges():
    with pytest.raises(UndefinedModularityError):
        modularity(Graph(3, []), [(0, 1, 2)])


# --- girvan-newman --------------------------------------------------------------

def test_gn_splits_bridge_first():
    part = girvan_newman(two_triangles_with_bridge(), target=2)
    assert set(part.communities) == {(0, 1, 2), (3, 4, 5)}


def test_gn_target_one_is_identity():
    g = two_triangles_with_bridge()
    part = girvan_newman(g, target=1)
    assert part.communities == (tuple(range(6)),)
    assert part.modularity == pytest.approx(0.0, abs=1e-12)


def test_gn_zachary_target_two(karate_path):
    g, _ = read_edge_list(karate_path)
    part = girvan_newman(g, target=2)
    assert len(part) == 2


def test_gn_invalid_targets():
    g = two_triangles_with_bridge()
    with pytest.raises(InvalidTargetError):
        girvan_newman(g, target=0)
    with pytest.raises(InvalidTargetError):
        girvan_newman(g, target=7)
    disconnected = Graph(4, [(0, 1), (2, 3)])
    with pytest.raises(InvalidTargetError):
        girvan_newman(disconnected, target=1)  # already 2 components


def test_gn_every_target_reachable_and_monotone():
    g = two_triangles_with_bridge()
    sizes = []
    for target in range(1, g.n + 1):
        part = girvan_newman(g, target=target)
        assert len(part) == target
        flat = sorted(v for c in part.communities for v in c)
        assert flat == list(range(g.n))
        sizes.append(len(part))
    assert sizes == sorted(sizes)


def test_gn_max_modularity_recovers_planted_cliques():
    for a in range(4, 9):
        for b in (a, a + 1):
            g = clique_pair(a, b)
            part = girvan_newman(g)
            expected = {tuple(range(a)), tuple(range(a, a + b))}
            assert set(part.communities) == expected, (a, b)


def test_gn_isolated_nodes_form_singletons():
    g = Graph(5, [(0, 1), (1, 2), (0, 2)])
    part = girvan_newman(g, target=3)
    assert (3,) in part.communities and (4,) in part.communities
    densities = dict(zip(part.communities, part.per_community_density))
    assert densities[(3,)] == 0.0


def test_gn_deterministic():
    g = generate(GeneratorSpec("random", 40, 100, rng_seed=8))
    a = girvan_newman(g, target=4)
    b = girvan_newman(g, target=4)
    assert a.communities == b.communities


# --- partition bookkeeping -------------------------------------------------------

def test_partition_from_communities_validates():
    g = Graph(4, [(0, 1), (2, 3)])
    with pytest.raises(ValueError):
        partition_from_communities(g, [(0, 1), (1, 2, 3)])  # overlap
    with pytest.raises(ValueError):
        partition_from_communities(g, [(0, 1)])  # not covering
    with pytest.raises(ValueError):
        partition_from_communities(g, [(0, 1), (), (2, 3)])  # empty


def test_per_community_density_matches_induced_subgraphs():
    g = clique_pair(4, 5)
    part = girvan_newman(g, target=2)
    assert part.per_community_density == pytest.approx((1.0, 1.0))


def test_average_density_two_cliques():
    g = Graph(7, [(0, 1), (1, 2), (0, 2), (3, 4), (3, 5), (3, 6), (4, 5), (4, 6), (5, 6)])
    part = partition_from_communities(g, [(0, 1, 2), (3, 4, 5, 6)])
    mean, sd = average_community_density(part)
    assert mean == pytest.approx(1.0)
    assert sd == pytest.approx(0.0)


def test_average_density_arithmetic():
    # five-node communities engineered to densities 0.2 and 0.4
    g = Graph(10, [(0, 1), (2, 3), (5, 6), (5, 7), (6, 7), (8, 9)])
    part = partition_from_communities(g, [tuple(range(5)), tuple(range(5, 10))])
    mean, sd = average_community_density(part)
    assert part.per_community_density == pytest.approx((0.2, 0.4))
    assert mean == pytest.approx(0.3)
    assert sd == pytest.approx(0.1)


def test_generated_networks_community_density_scale():
    # balanced six-way partitions of uniform graphs keep the parent density
    means = []
    for seed in range(10):
        g = generate(GeneratorSpec("random", 100, 800, rng_seed=seed))
        rng = random.Random(seed)
        nodes = list(range(100))
        rng.shuffle(nodes)
        groups = [sorted(nodes[i::6]) for i in range(6)]
        part = partition_from_communities(g, groups)
        mean, _ = average_community_density(part)
        means.append(mean)
    overall = sum(means) / len(means)
    assert overall == pytest.approx(0.16, abs=0.05)
