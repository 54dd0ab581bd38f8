import math
import random

import pytest

from driverseed.diffusion import DiffusionTrace, InvalidSeedError, LtmConfig, ltm_run
from driverseed.graph import Graph

from oracles import random_graph

PATH3 = Graph(3, [(0, 1), (1, 2)])


def complete(n):
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cumulative(trace: DiffusionTrace) -> list[int]:
    return [row.cumulative for row in trace.rows]


def test_all_seeds_converges_immediately():
    g = random_graph(random.Random(1), 12, 0.3)
    trace = ltm_run(g, range(12), LtmConfig())
    assert trace.converged
    assert len(trace.rows) == 1
    assert trace.rows[0].iteration == 0
    assert trace.rows[0].cumulative == 12


def test_path_at_least_rule_walks_through():
    trace = ltm_run(PATH3, [0], LtmConfig(theta=0.5, rule="at-least"))
    assert cumulative(trace) == [1, 2, 3]
    assert trace.converged
    assert trace.rows[1].newly_activated == (1,)
    assert trace.rows[2].newly_activated == (2,)


def test_path_strict_rule_freezes():
    trace = ltm_run(PATH3, [0], LtmConfig(theta=0.5, rule="strictly-greater"))
    assert cumulative(trace) == [1, 1]
    assert trace.converged
    assert trace.rows[-1].newly_activated == ()


def test_complete_graph_threshold_boundary():
    for n in (5, 6, 9, 10):
        g = complete(n)
        just_enough = math.ceil((n - 1) / 2)
        trace = ltm_run(g, range(just_enough), LtmConfig(theta=0.5, max_iterations=5))
        assert trace.final_count == n
        assert trace.rows[1].cumulative == n  # single round
        below = just_enough - 1
        if below >= 1:
            trace = ltm_run(g, range(below), LtmConfig(theta=0.5, max_iterations=5))
            assert trace.final_count == below


def test_zero_degree_non_seed_never_activates():
    g = Graph(5, [(0, 1), (0, 2), (0, 3)])  # node 4 isolated
    trace = ltm_run(g, [0, 1], LtmConfig())
    assert 4 not in trace.activated_nodes()
    assert trace.final_count == 4


def test_seed_validation():
    with pytest.raises(InvalidSeedError):
        ltm_run(PATH3, [])
    with pytest.raises(InvalidSeedError):
        ltm_run(PATH3, [5])


def test_max_iterations_truncates():
    g = Graph(6, [(i, i + 1) for i in range(5)])
    trace = ltm_run(g, [0], LtmConfig(theta=0.5, max_iterations=2))
    assert not trace.converged
    assert trace.rows[-1].iteration == 2
    assert trace.final_count == 3


def test_count_at_reads_converged_tail():
    trace = ltm_run(PATH3, [0], LtmConfig(theta=0.5, max_iterations=20))
    assert trace.count_at(0) == 1
    assert trace.count_at(1) == 2
    assert trace.count_at(2) == 3
    assert trace.count_at(20) == 3


def test_monotone_in_seeds_and_trace_invariants():
    rng = random.Random(77)
    for _ in range(25):
        n = rng.randint(2, 120)
        g = random_graph(rng, n, rng.uniform(0.02, 0.3))
        k_small = rng.randint(1, max(1, n // 3))
        k_big = rng.randint(k_small, n)
        nodes = list(range(n))
        rng.shuffle(nodes)
        small, big = set(nodes[:k_small]), set(nodes[:k_big])
        cfg = LtmConfig(theta=rng.choice([0.3, 0.5, 0.7]), max_iterations=n)
        t_small = ltm_run(g, small, cfg)
        t_big = ltm_run(g, big, cfg)
        assert t_small.activated_nodes() <= t_big.activated_nodes()
        for t in (t_small, t_big):
            assert t.converged
            assert t.rows[-1].iteration <= n
            cums = cumulative(t)
            assert cums == sorted(cums)
            assert cums[-1] <= n


def test_determinism():
    g = random_graph(random.Random(8), 40, 0.15)
    a = ltm_run(g, [0, 3, 7], LtmConfig())
    b = ltm_run(g, [0, 3, 7], LtmConfig())
    assert a == b
