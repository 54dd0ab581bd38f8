"""Deterministic linear-threshold diffusion with synchronous rounds.

Every node shares one threshold. An inactive node with positive degree
activates once the fraction of its active neighbors satisfies the activation
rule against the threshold; the default rule is ``at-least`` (fraction >=
theta), with ``strictly-greater`` available because a threshold of exactly
0.5 behaves very differently under the two comparisons. Activations within a
round are computed from the previous round's active set, and the process
stops when a round activates nobody or the iteration cap is hit. There is no
randomness anywhere in the simulation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph

RULES = ("at-least", "strictly-greater")


class InvalidSeedError(ValueError):
    """Seed set empty or referencing nodes outside the graph."""


@dataclass(frozen=True)
class LtmConfig:
    theta: float = 0.5
    max_iterations: int = 20
    rule: str = "at-least"

    def __post_init__(self):
        if not 0.0 < self.theta <= 1.0:
            raise ValueError("theta must lie in (0, 1]")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be positive")
        if self.rule not in RULES:
            raise ValueError(f"rule must be one of {RULES}")


@dataclass(frozen=True)
class TraceRow:
    iteration: int
    newly_activated: tuple[int, ...]
    cumulative: int


@dataclass(frozen=True)
class DiffusionTrace:
    """Per-round activation record; row 0 is the seed set itself."""

    rows: tuple[TraceRow, ...]
    converged: bool
    n: int = 0

    @property
    def final_count(self) -> int:
        return self.rows[-1].cumulative

    def count_at(self, iteration: int) -> int:
        """Cumulative count at the given round (final count if the run
        converged earlier)."""
        count = self.rows[0].cumulative
        for row in self.rows:
            if row.iteration > iteration:
                break
            count = row.cumulative
        return count

    def activated_nodes(self) -> set[int]:
        out: set[int] = set()
        for row in self.rows:
            out.update(row.newly_activated)
        return out


def ltm_run(g: Graph, seeds, cfg: LtmConfig | None = None) -> DiffusionTrace:
    """Simulate the threshold cascade from ``seeds`` and record every round.

    ``seeds`` may be any iterable of node ids (a SeedSet's nodes included).
    Zero-degree non-seeds can never activate. The trace includes the final
    empty round when the cascade stalls before saturating the graph.
    """
    cfg = cfg or LtmConfig()
    seed_list = sorted(set(int(v) for v in seeds))
    if not seed_list:
        raise InvalidSeedError("seed set is empty")
    for v in seed_list:
        if not 0 <= v < g.n:
            raise InvalidSeedError(f"seed {v} not in graph")

    theta = cfg.theta
    strict = cfg.rule == "strictly-greater"
    active = [False] * g.n
    active_neighbors = [0] * g.n
    for v in seed_list:
        active[v] = True
    for v in seed_list:
        for w in g.neighbors(v):
            active_neighbors[w] += 1

    cumulative = len(seed_list)
    rows = [TraceRow(0, tuple(seed_list), cumulative)]
    if cumulative == g.n:
        return DiffusionTrace(tuple(rows), converged=True, n=g.n)

    # only nodes that gained an active neighbor can newly cross the threshold
    candidates = {w for v in seed_list for w in g.neighbors(v) if not active[w]}
    converged = False
    for it in range(1, cfg.max_iterations + 1):
        newly: list[int] = []
        for w in sorted(candidates):
            deg = g.degree(w)
            frac = active_neighbors[w] / deg
            if (frac > theta) if strict else (frac >= theta):
                newly.append(w)
        if not newly:
            rows.append(TraceRow(it, (), cumulative))
            converged = True
            break
        cumulative += len(newly)
        rows.append(TraceRow(it, tuple(newly), cumulative))
        for v in newly:
            active[v] = True
            candidates.discard(v)
        for v in newly:
            for w in g.neighbors(v):
                active_neighbors[w] += 1
                if not active[w]:
                    candidates.add(w)
        if cumulative == g.n:
            converged = True
            break
    return DiffusionTrace(tuple(rows), converged=converged, n=g.n)
