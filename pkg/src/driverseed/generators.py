"""Synthetic network generators with exact node and edge counts.

Three families: uniform random edge placement, ring-lattice rewiring
(small-world) and preferential attachment (scale-free). The named models fix
the wiring style; uniform edge additions/removals then adjust the result to
exactly the requested edge count, so density sweeps hit their targets
precisely. Generation is a pure function of (spec, seed).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graph import Graph

FAMILIES = ("random", "small-world", "scale-free")

REWIRE_PROBABILITY = 0.1


class InfeasibleSpecError(ValueError):
    """Requested (family, n, m) combination cannot be built."""


@dataclass(frozen=True)
class GeneratorSpec:
    """Recipe for one synthetic network."""

    family: str
    n: int
    m: int
    rng_seed: int = 0

    def validate(self) -> None:
        if self.family not in FAMILIES:
            raise InfeasibleSpecError(f"unknown family {self.family!r}; choose from {FAMILIES}")
        if self.n < 1:
            raise InfeasibleSpecError("need at least one node")
        max_m = self.n * (self.n - 1) // 2
        if self.m < 0 or self.m > max_m:
            raise InfeasibleSpecError(
                f"edge count {self.m} outside feasible range [0, {max_m}] for n={self.n}"
            )
        if self.family in ("small-world", "scale-free") and self.m < self.n - 1:
            raise InfeasibleSpecError(
                f"{self.family} needs m >= n-1 for its wiring scaffold (got m={self.m}, n={self.n})"
            )


def generate(spec: GeneratorSpec) -> Graph:
    """Build a graph with exactly ``spec.n`` nodes and ``spec.m`` edges.

    Identical (spec, rng_seed) pairs produce identical edge sets.
    Connectivity is not enforced; disconnected outputs are legal.
    """
    spec.validate()
    rng = random.Random(spec.rng_seed)
    if spec.family == "random":
        edges = _uniform_edges(spec.n, spec.m, rng)
    elif spec.family == "small-world":
        edges = _small_world_edges(spec.n, spec.m, rng)
    else:
        edges = _preferential_edges(spec.n, spec.m, rng)
    assert len(edges) == spec.m
    return Graph(spec.n, sorted(edges))


def _pair_from_index(n: int, k: int) -> tuple[int, int]:
    """Unrank k in [0, n(n-1)/2) to the k-th pair (i, j), i < j, row-major."""
    lo, hi = 0, n - 1
    while lo < hi:  # largest i with start(i) <= k
        mid = (lo + hi + 1) // 2
        if mid * (2 * n - mid - 1) // 2 <= k:
            lo = mid
        else:
            hi = mid - 1
    i = lo
    j = i + 1 + (k - i * (2 * n - i - 1) // 2)
    return i, j


def _uniform_edges(n: int, m: int, rng: random.Random) -> set[tuple[int, int]]:
    total = n * (n - 1) // 2
    if m > total // 2:
        # near-complete: sample which pairs to leave out
        excluded = set(rng.sample(range(total), total - m))
        return {_pair_from_index(n, k) for k in range(total) if k not in excluded}
    picks = rng.sample(range(total), m)
    return {_pair_from_index(n, k) for k in picks}


def _adjust_to_exact(
    n: int, edges: set[tuple[int, int]], m: int, rng: random.Random
) -> set[tuple[int, int]]:
    """Add/remove uniformly random edges until exactly m remain."""
    while len(edges) > m:
        drop = rng.choice(sorted(edges))
        edges.discard(drop)
    total = n * (n - 1) // 2
    missing = m - len(edges)
    if missing <= 0:
        return edges
    if missing > (total - len(edges)) // 2:
        # few non-edges left: enumerate instead of rejection-sampling
        non_edges = [
            (i, j)
            for k in range(total)
            for (i, j) in (_pair_from_index(n, k),)
            if (i, j) not in edges
        ]
        edges.update(rng.sample(non_edges, missing))
        return edges
    while len(edges) < m:
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u == v:
            continue
        key = (u, v) if u < v else (v, u)
        if key not in edges:
            edges.add(key)
    return edges


def _small_world_edges(n: int, m: int, rng: random.Random) -> set[tuple[int, int]]:
    # ring lattice of even degree floor(2m/n), rewired, then trimmed/padded
    k = (2 * m // n) // 2 * 2
    k = min(k, n - 1 if (n - 1) % 2 == 0 else n - 2)
    edges: set[tuple[int, int]] = set()
    neighbors: list[set[int]] = [set() for _ in range(n)]

    def add(u: int, v: int) -> bool:
        key = (u, v) if u < v else (v, u)
        if u == v or key in edges:
            return False
        edges.add(key)
        neighbors[u].add(v)
        neighbors[v].add(u)
        return True

    for j in range(1, k // 2 + 1):
        for u in range(n):
            add(u, (u + j) % n)
    # Watts-Strogatz style rewiring of lattice edges
    for j in range(1, k // 2 + 1):
        for u in range(n):
            v = (u + j) % n
            key = (u, v) if u < v else (v, u)
            if key not in edges or rng.random() >= REWIRE_PROBABILITY:
                continue
            w = rng.randrange(n)
            if w == u or w in neighbors[u]:
                continue
            edges.discard(key)
            neighbors[u].discard(v)
            neighbors[v].discard(u)
            add(u, w)
    return _adjust_to_exact(n, edges, m, rng)


def _preferential_edges(n: int, m: int, rng: random.Random) -> set[tuple[int, int]]:
    c = -(-m // n)  # ceil(m / n) attachments per arriving node
    core = min(c + 1, n)
    edges: set[tuple[int, int]] = set()
    endpoint_pool: list[int] = []
    for i in range(core):
        for j in range(i + 1, core):
            edges.add((i, j))
            endpoint_pool.extend((i, j))
    if not endpoint_pool:
        endpoint_pool.extend(range(core))
    for t in range(core, n):
        want = min(c, t)
        targets: set[int] = set()
        while len(targets) < want:
            targets.add(endpoint_pool[rng.randrange(len(endpoint_pool))])
        for w in sorted(targets):
            edges.add((w, t) if w < t else (t, w))
            endpoint_pool.extend((t, w))
    return _adjust_to_exact(n, edges, m, rng)
