"""Driver-node identification via a greedy minimum dominating set.

A vertex covers itself and its neighbors (closed neighborhood). Each greedy
round adds the vertex covering the most still-uncovered vertices; ties are
broken by a seeded uniform choice among the maximizers, or by lowest node id
in deterministic mode. The same routine runs globally and, through
:func:`community_drivers`, on each community's induced subgraph.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .community import Partition
from .graph import Graph, induced_subgraph


@dataclass(frozen=True)
class DriverSet:
    """A dominating set for its scope's graph.

    ``scope`` is ``"global"`` or ``"community:<index>"``.
    """

    nodes: frozenset[int]
    scope: str = "global"

    def __len__(self) -> int:
        return len(self.nodes)

    def sorted_nodes(self) -> list[int]:
        return sorted(self.nodes)


@dataclass(frozen=True)
class DriverStats:
    """Global driver count vs. the per-community total.

    diff = ndnc - ndn, reported with sign; either sign can occur.
    """

    ndn: int
    ndnc: int

    @property
    def diff(self) -> int:
        return self.ndnc - self.ndn


def is_dominating_set(g: Graph, nodes) -> bool:
    """True when every vertex is in ``nodes`` or adjacent to a member."""
    chosen = set(nodes)
    for v in range(g.n):
        if v in chosen or any(w in chosen for w in g.neighbors(v)):
            continue
        return False
    return True


def greedy_mds(g: Graph, rng_seed: int | None = None, deterministic: bool = False) -> DriverSet:
    """Greedy dominating set; isolated vertices dominate themselves.

    With ``deterministic=True`` ties go to the lowest node id (bit-stable CI
    runs); otherwise a ``random.Random(rng_seed)`` picks uniformly among the
    tied maximizers.
    """
    rng = random.Random(rng_seed)
    covered = [False] * g.n
    gain = [g.degree(v) + 1 for v in range(g.n)]
    uncovered = g.n
    chosen: list[int] = []
    while uncovered > 0:
        best = max(gain)
        candidates = [v for v in range(g.n) if gain[v] == best]
        pick = candidates[0] if deterministic else rng.choice(candidates)
        chosen.append(pick)
        for x in (pick, *g.neighbors(pick)):
            if covered[x]:
                continue
            covered[x] = True
            uncovered -= 1
            gain[x] -= 1
            for w in g.neighbors(x):
                gain[w] -= 1
    return DriverSet(frozenset(chosen), scope="global")


def community_drivers(
    g: Graph,
    p: Partition,
    rng_seed: int | None = None,
    deterministic: bool = False,
) -> list[DriverSet]:
    """Greedy dominating set of each community's induced subgraph.

    Every community's run is seeded with the same ``rng_seed`` (communities
    are independent subproblems), so a single-community partition reproduces
    the global run exactly. Node ids in the results refer to ``g``.
    """
    out: list[DriverSet] = []
    for idx, comm in enumerate(p.communities):
        sub = induced_subgraph(g, comm)
        local = greedy_mds(sub, rng_seed=rng_seed, deterministic=deterministic)
        back = sub.parent_nodes
        out.append(
            DriverSet(frozenset(back[v] for v in local.nodes), scope=f"community:{idx}")
        )
    return out


def driver_stats(
    g: Graph,
    p: Partition,
    rng_seed: int | None = None,
    deterministic: bool = False,
) -> DriverStats:
    """NDN (global run) and NDNC (summed community runs) under one seed."""
    ndn = len(greedy_mds(g, rng_seed=rng_seed, deterministic=deterministic))
    ndnc = sum(len(d) for d in community_drivers(g, p, rng_seed=rng_seed, deterministic=deterministic))
    return DriverStats(ndn=ndn, ndnc=ndnc)
