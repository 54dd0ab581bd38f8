"""Percent-gain comparisons between seed-selection methods.

The gain of method A over method B on an n-node network is
``(influenced_A - influenced_B) / n * 100`` — a difference in percentage
points of the whole network, read at a fixed iteration (runs that converged
earlier contribute their final counts). The matrix is antisymmetric with a
zero diagonal by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .diffusion import DiffusionTrace


class InvalidCountError(ValueError):
    """Influence counts must lie in [0, n]."""


class InconsistentInputError(ValueError):
    """Traces being compared must come from the same network."""


def percent_gain(influenced_a: int, influenced_b: int, n: int) -> float:
    """Gain of A over B as a percentage of the n-node network."""
    if n < 1:
        raise InvalidCountError("network must have at least one node")
    for label, count in (("A", influenced_a), ("B", influenced_b)):
        if not 0 <= count <= n:
            raise InvalidCountError(f"count for {label} ({count}) outside [0, {n}]")
    return (influenced_a - influenced_b) / n * 100.0


@dataclass(frozen=True)
class GainReport:
    """Per-method influence counts and the full pairwise gain matrix."""

    network_id: str
    n: int
    at_iteration: int
    counts: tuple[tuple[str, int], ...]
    percent: int | None = None

    def methods(self) -> list[str]:
        return [m for m, _ in self.counts]

    def count_of(self, method: str) -> int:
        for m, c in self.counts:
            if m == method:
                return c
        raise KeyError(method)

    def gain(self, method_a: str, method_b: str) -> float:
        return percent_gain(self.count_of(method_a), self.count_of(method_b), self.n)

    def matrix(self) -> dict[tuple[str, str], float]:
        out = {}
        for a, ca in self.counts:
            for b, cb in self.counts:
                out[(a, b)] = percent_gain(ca, cb, self.n)
        return out


def gain_table(
    traces: Mapping[str, DiffusionTrace],
    n: int,
    at_iteration: int,
    network_id: str = "",
    percent: int | None = None,
) -> GainReport:
    """Read each method's cumulative count at ``at_iteration`` and compare.

    Raises :class:`InconsistentInputError` when a trace was recorded on a
    different-sized network than claimed.
    """
    if not traces:
        raise InconsistentInputError("no traces given")
    counts = []
    for method, trace in traces.items():
        if trace.n and trace.n != n:
            raise InconsistentInputError(
                f"trace for {method!r} ran on n={trace.n}, expected n={n}"
            )
        counts.append((method, trace.count_at(at_iteration)))
    return GainReport(
        network_id=network_id,
        n=n,
        at_iteration=at_iteration,
        counts=tuple(counts),
        percent=percent,
    )
