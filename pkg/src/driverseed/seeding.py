"""Seed-set construction: rank driver nodes and take the top slice.

Twelve strategies = six ranking bases x two scopes. Globally, drivers from
the whole graph are ranked and the top p% of the driver pool (or of all
nodes, with ``basis="all-nodes"``) becomes the seed set. At community scope,
drivers are found inside each community, ranked on the community's induced
subgraph, and picked by a multi-round sweep that takes one node per
community per round so every community is represented whenever the budget
allows.

Ranking bases: ``random`` (seeded draw), ``degree``, ``closeness``,
``betweenness``, ``dcb`` (mean of the three normalized centralities) and
``kempe`` (size of the cascade a driver triggers on its own). Ranking ties
break by ascending node id.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .centrality import (
    betweenness_centrality,
    closeness_centrality,
    degree_centrality,
)
from .community import Partition
from .diffusion import LtmConfig, ltm_run
from .drivers import DriverSet, community_drivers, greedy_mds
from .graph import Graph, induced_subgraph

BASES = ("random", "degree", "closeness", "betweenness", "kempe", "dcb")
SCOPES = ("global", "community")
PERCENTS = (1, 10, 20, 30, 40, 50)
BASIS_CHOICES = ("driver-pool", "all-nodes")


class InvalidBudgetError(ValueError):
    """Seed budget is not a positive number the pool can satisfy."""


@dataclass(frozen=True)
class SeedMethod:
    base: str
    scope: str

    def __post_init__(self):
        if self.base not in BASES:
            raise ValueError(f"base must be one of {BASES}")
        if self.scope not in SCOPES:
            raise ValueError(f"scope must be one of {SCOPES}")


# short method codes used on the command line and in result tables
METHOD_CODES: dict[str, SeedMethod] = {
    "dr": SeedMethod("random", "global"),
    "dd": SeedMethod("degree", "global"),
    "dc": SeedMethod("closeness", "global"),
    "db": SeedMethod("betweenness", "global"),
    "dk": SeedMethod("kempe", "global"),
    "ddcb": SeedMethod("dcb", "global"),
    "drc": SeedMethod("random", "community"),
    "ddc": SeedMethod("degree", "community"),
    "dcc": SeedMethod("closeness", "community"),
    "dbc": SeedMethod("betweenness", "community"),
    "dkc": SeedMethod("kempe", "community"),
    "ddcbc": SeedMethod("dcb", "community"),
}


def parse_method(code: str) -> SeedMethod:
    try:
        return METHOD_CODES[code.lower()]
    except KeyError:
        raise ValueError(
            f"unknown method {code!r}; choose from {', '.join(METHOD_CODES)}"
        ) from None


@dataclass(frozen=True)
class RankedDrivers:
    """Drivers with scores, descending; ties resolved by node id."""

    entries: tuple[tuple[int, float], ...]
    scope: str = "global"

    def nodes(self) -> list[int]:
        return [v for v, _ in self.entries]

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class SeedSet:
    nodes: tuple[int, ...]
    percent: int
    basis: str = "driver-pool"

    def __len__(self) -> int:
        return len(self.nodes)


def _sorted_entries(scored: dict[int, float]) -> tuple[tuple[int, float], ...]:
    return tuple(sorted(scored.items(), key=lambda kv: (-kv[1], kv[0])))


def rank_drivers(
    g: Graph,
    d: DriverSet,
    base: str,
    rng_seed: int | None = None,
    theta: float = 0.5,
    rule: str = "at-least",
) -> RankedDrivers:
    """Score the drivers on ``g`` under the given base and sort descending.

    For community scope, pass the community's induced subgraph as ``g`` with
    driver ids already mapped into it; local structure then drives the
    ranking.
    """
    if base not in BASES:
        raise ValueError(f"base must be one of {BASES}")
    nodes = d.sorted_nodes()
    if not nodes:
        raise ValueError("cannot rank an empty driver set")
    if base == "kempe":
        return rank_kempe(g, d, theta=theta, rule=rule)
    if base == "random":
        rng = random.Random(rng_seed)
        scored = {v: rng.random() for v in nodes}
    elif base == "degree":
        vals = degree_centrality(g).values
        scored = {v: vals[v] for v in nodes}
    elif base == "closeness":
        vals = closeness_centrality(g).values
        scored = {v: vals[v] for v in nodes}
    elif base == "betweenness":
        vals = betweenness_centrality(g).values
        scored = {v: vals[v] for v in nodes}
    else:  # dcb: arithmetic mean of the three normalized centralities
        dv = degree_centrality(g).values
        cv = closeness_centrality(g).values
        bv = betweenness_centrality(g).values
        scored = {v: (dv[v] + cv[v] + bv[v]) / 3.0 for v in nodes}
    return RankedDrivers(_sorted_entries(scored), scope=d.scope)


def rank_kempe(
    g: Graph, d: DriverSet, theta: float = 0.5, rule: str = "at-least"
) -> RankedDrivers:
    """Score each driver by the cascade size its singleton seed reaches."""
    nodes = d.sorted_nodes()
    if not nodes:
        raise ValueError("cannot rank an empty driver set")
    cfg = LtmConfig(theta=theta, max_iterations=max(1, g.n), rule=rule)
    scored = {v: float(ltm_run(g, [v], cfg).final_count) for v in nodes}
    return RankedDrivers(_sorted_entries(scored), scope=d.scope)


def seed_budget(percent: int, basis_size: int, pool_size: int) -> int:
    """max(1, percent of basis rounded half-up), capped at the pool size."""
    if percent not in PERCENTS:
        raise ValueError(f"percent must be one of {PERCENTS}")
    if basis_size < 0 or pool_size < 1:
        raise InvalidBudgetError("need a nonempty driver pool")
    k = max(1, int(percent * basis_size / 100.0 + 0.5))
    return min(k, pool_size)


def select_global(r: RankedDrivers, percent: int, basis_size: int) -> SeedSet:
    """Top-k prefix of a global ranking."""
    k = seed_budget(percent, basis_size, len(r))
    return SeedSet(tuple(v for v, _ in r.entries[:k]), percent=percent)


def select_multiround(g: Graph, rankings, k: int) -> tuple[int, ...]:
    """One node per community per round until ``k`` nodes are picked.

    Round r takes each community's r-th ranked driver; within a round the
    candidates are ordered by degree in ``g`` (highest first, ties by id),
    the unified cross-community criterion. With k at least the number of
    nonempty communities, every such community contributes a node.
    """
    rankings = list(rankings)
    if k <= 0:
        raise InvalidBudgetError("budget must be positive")
    pool = sum(len(r) for r in rankings)
    if pool == 0:
        raise InvalidBudgetError("no community has a ranked driver")
    if k > pool:
        raise InvalidBudgetError(f"budget {k} exceeds the {pool} available drivers")

    picked: list[int] = []
    rnd = 0
    while len(picked) < k:
        candidates = [r.entries[rnd][0] for r in rankings if len(r) > rnd]
        candidates.sort(key=lambda v: (-g.degree(v), v))
        take = min(k - len(picked), len(candidates))
        picked.extend(candidates[:take])
        rnd += 1
    return tuple(picked)


def select_seeds(
    g: Graph,
    method: SeedMethod | str,
    percent: int,
    p: Partition | None = None,
    theta: float = 0.5,
    rule: str = "at-least",
    rng_seed: int | None = None,
    basis: str = "driver-pool",
    deterministic: bool = False,
) -> SeedSet:
    """Full pipeline: drivers -> ranking -> top-slice selection.

    Community scope requires a partition. ``basis`` controls what the
    percentage is taken of: the detected driver pool (default) or all nodes.
    """
    if isinstance(method, str):
        method = parse_method(method)
    if basis not in BASIS_CHOICES:
        raise ValueError(f"basis must be one of {BASIS_CHOICES}")

    if method.scope == "global":
        d = greedy_mds(g, rng_seed=rng_seed, deterministic=deterministic)
        ranked = rank_drivers(g, d, method.base, rng_seed=rng_seed, theta=theta, rule=rule)
        basis_size = len(d) if basis == "driver-pool" else g.n
        chosen = select_global(ranked, percent, basis_size)
        return SeedSet(chosen.nodes, percent=percent, basis=basis)

    if p is None:
        raise ValueError("community-scope methods need a partition")
    dsets = community_drivers(g, p, rng_seed=rng_seed, deterministic=deterministic)
    pool = sum(len(d) for d in dsets)
    basis_size = pool if basis == "driver-pool" else g.n
    k = seed_budget(percent, basis_size, pool)

    rankings: list[RankedDrivers] = []
    for idx, (comm, d) in enumerate(zip(p.communities, dsets)):
        sub = induced_subgraph(g, comm)
        to_local = {orig: local for local, orig in enumerate(sub.parent_nodes)}
        local_drivers = DriverSet(frozenset(to_local[v] for v in d.nodes), scope=d.scope)
        # per-community streams for the random base get their own derived seed
        local_seed = rng_seed if rng_seed is None else _mix(rng_seed, idx)
        ranked_local = rank_drivers(
            sub, local_drivers, method.base, rng_seed=local_seed, theta=theta, rule=rule
        )
        entries = tuple(
            (sub.parent_nodes[v], score) for v, score in ranked_local.entries
        )
        rankings.append(RankedDrivers(entries, scope=d.scope))

    nodes = select_multiround(g, rankings, k)
    return SeedSet(nodes, percent=percent, basis=basis)


def _mix(seed: int, index: int) -> int:
    """Stable per-community stream split (splitmix64 step)."""
    x = (seed + 0x9E3779B97F4A7C15 * (index + 1)) & 0xFFFFFFFFFFFFFFFF
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    return x ^ (x >> 31)
