"""Undirected simple-graph core shared by every other module.

Nodes are dense integer ids ``0..n-1``. External string labels are kept for
reporting and file IO and map bijectively onto the ids. Graphs are immutable
after construction, so they can be read concurrently without locking.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class InvalidNodeError(ValueError):
    """A node id or label that does not belong to the graph."""


class UndefinedDensityError(ValueError):
    """Density is undefined for graphs with fewer than two nodes."""


class EdgeListParseError(ValueError):
    """Malformed edge-list input; carries the offending line number."""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


@dataclass(frozen=True)
class LoadStats:
    """What was silently dropped while reading an edge-list file."""

    self_loops_dropped: int = 0
    duplicates_dropped: int = 0


class Graph:
    """Immutable undirected simple graph.

    Self-loops and duplicate edges passed to the constructor are ignored, so
    degree sums always equal ``2 * m``. ``parent_nodes`` is populated on
    graphs produced by :func:`induced_subgraph` and maps each local id back
    to the id it had in the parent graph.
    """

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]],
        labels: Sequence[str] | None = None,
        parent_nodes: tuple[int, ...] | None = None,
    ):
        if n < 0:
            raise ValueError("node count must be nonnegative")
        if labels is not None:
            if len(labels) != n:
                raise ValueError("labels length must equal node count")
            labels = tuple(str(x) for x in labels)
        else:
            labels = tuple(str(i) for i in range(n))

        edge_set: set[tuple[int, int]] = set()
        neighbor_sets: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidNodeError(f"edge ({u}, {v}) references a node outside [0, {n})")
            if u == v:
                continue
            key = (u, v) if u < v else (v, u)
            if key in edge_set:
                continue
            edge_set.add(key)
            neighbor_sets[u].add(v)
            neighbor_sets[v].add(u)

        self.n = n
        self.labels = labels
        self.parent_nodes = parent_nodes
        self._edges = frozenset(edge_set)
        self._adj: tuple[tuple[int, ...], ...] = tuple(
            tuple(sorted(s)) for s in neighbor_sets
        )
        self._label_to_id = {lab: i for i, lab in enumerate(labels)}
        if len(self._label_to_id) != n:
            raise ValueError("labels must be unique")

    @property
    def m(self) -> int:
        """Number of edges."""
        return len(self._edges)

    def nodes(self) -> range:
        return range(self.n)

    def edges(self) -> list[tuple[int, int]]:
        """Edges as (u, v) with u < v, sorted for deterministic iteration."""
        return sorted(self._edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self._adj]

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._edges

    def id_of(self, label: str) -> int:
        try:
            return self._label_to_id[label]
        except KeyError:
            raise InvalidNodeError(f"unknown node label {label!r}") from None

    def adjacency_sets(self) -> list[set[int]]:
        """Mutable copy of the adjacency, for algorithms that remove edges."""
        return [set(a) for a in self._adj]

    def __repr__(self) -> str:  # pragma: no cover
        return f"Graph(n={self.n}, m={self.m})"


def density(g: Graph) -> float:
    """Edge density ``2m / (n(n-1))``; requires at least two nodes."""
    if g.n < 2:
        raise UndefinedDensityError("density undefined for graphs with fewer than 2 nodes")
    return 2.0 * g.m / (g.n * (g.n - 1))


def connected_components(g: Graph) -> list[set[int]]:
    """Connected components as node sets, ordered by smallest member."""
    seen = [False] * g.n
    components: list[set[int]] = []
    for start in range(g.n):
        if seen[start]:
            continue
        comp = {start}
        seen[start] = True
        stack = [start]
        while stack:
            u = stack.pop()
            for w in g.neighbors(u):
                if not seen[w]:
                    seen[w] = True
                    comp.add(w)
                    stack.append(w)
        components.append(comp)
    return components


def induced_subgraph(g: Graph, nodes: Iterable[int]) -> Graph:
    """Subgraph on ``nodes`` with ids remapped to a dense range.

    The result's ``parent_nodes`` records, for each new id, the id it had in
    ``g`` (sorted ascending), so per-community results can be mapped back.
    Labels are inherited from the parent.
    """
    keep = sorted(set(nodes))
    for v in keep:
        if not (0 <= v < g.n):
            raise InvalidNodeError(f"node {v} not in graph")
    remap = {old: new for new, old in enumerate(keep)}
    edges = [
        (remap[u], remap[v])
        for u, v in g.edges()
        if u in remap and v in remap
    ]
    labels = [g.labels[v] for v in keep]
    return Graph(len(keep), edges, labels=labels, parent_nodes=tuple(keep))


def parse_edge_list(lines: Iterable[str]) -> tuple[Graph, LoadStats]:
    """Parse SNAP-style edge-list text into a graph.

    One edge per line, two whitespace-separated node labels. Lines starting
    with ``#`` are comments; blank lines are ignored. Directed input is
    symmetrized; self-loops and duplicate edges are dropped and counted.
    """
    label_ids: dict[str, int] = {}
    labels: list[str] = []
    raw_edges: list[tuple[int, int]] = []
    self_loops = 0
    duplicates = 0
    seen: set[tuple[int, int]] = set()

    def intern(label: str) -> int:
        if label not in label_ids:
            label_ids[label] = len(labels)
            labels.append(label)
        return label_ids[label]

    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListParseError(
                f"expected two whitespace-separated labels, got {len(parts)}", lineno
            )
        u = intern(parts[0])
        v = intern(parts[1])
        if u == v:
            self_loops += 1
            continue
        key = (u, v) if u < v else (v, u)
        if key in seen:
            duplicates += 1
            continue
        seen.add(key)
        raw_edges.append(key)

    g = Graph(len(labels), raw_edges, labels=labels)
    return g, LoadStats(self_loops_dropped=self_loops, duplicates_dropped=duplicates)


def read_edge_list(path) -> tuple[Graph, LoadStats]:
    """Read an edge-list file (see :func:`parse_edge_list` for the format)."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_edge_list(fh)


def write_edge_list(g: Graph, path) -> None:
    """Write the graph in the edge-list format, one labeled edge per line."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# nodes {g.n} edges {g.m}\n")
        for u, v in g.edges():
            fh.write(f"{g.labels[u]} {g.labels[v]}\n")
