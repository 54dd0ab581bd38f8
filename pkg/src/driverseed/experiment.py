"""Configuration-driven experiment harness and replay machinery.

Chains generate/load -> communities -> drivers -> seed selection ->
diffusion -> gain tables over a grid of networks x methods x seed percents x
repetitions. Every cell's randomness comes from one top-level seed expanded
through :func:`mix_seed` (an FNV-1a hash of the cell key folded into a
splitmix64 step), so a run is fully determined by its config. The manifest
written next to the outputs echoes the resolved config plus every derived
seed; feeding it back through :func:`replay` reproduces the CSVs byte for
byte.

Config files are plain text, one ``key = value`` per line, ``#`` comments
allowed. ``network`` lines repeat, one per network:

    network = random n=100 m=800
    network = file path=data/karate.edges target=2 id=zkc

Failures are per-item: a broken network or cell is recorded in the manifest
(``status.*`` lines) and the run continues.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from pathlib import Path

from .community import Partition, average_community_density, girvan_newman, partition_from_communities
from .diffusion import DiffusionTrace, LtmConfig, ltm_run
from .drivers import community_drivers, driver_stats, greedy_mds
from .generators import FAMILIES, GeneratorSpec, generate
from .graph import Graph, read_edge_list
from .metrics import percent_gain
from .seeding import BASIS_CHOICES, METHOD_CODES, PERCENTS, select_seeds

log = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.txt"
PRESETS: dict[str, dict] = {
    # synthetic sweep protocol: short runs, full percent ladder
    "table1-synthetic": {"iterations": 20, "percents": (1, 10, 20, 30, 40, 50), "theta": 0.5, "repetitions": 10},
    # real-network protocol: long runs at the 20% seed level
    "table2-real": {"iterations": 100, "percents": (20,), "theta": 0.5, "repetitions": 10},
}

_MASK64 = 0xFFFFFFFFFFFFFFFF


def mix_seed(master: int, *parts) -> int:
    """Derive a per-cell seed: FNV-1a over the cell key, then splitmix64.

    The cell key is the ``parts`` rendered as text and joined with ``/``;
    identical (master, parts) always give the same 63-bit seed.
    """
    h = 0xCBF29CE484222325
    for byte in "/".join(str(p) for p in parts).encode("utf-8"):
        h ^= byte
        h = (h * 0x100000001B3) & _MASK64
    x = (master ^ h) & _MASK64
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (x ^ (x >> 31)) & 0x7FFFFFFFFFFFFFFF


def load_edge_list(path) -> Graph:
    """Read an edge-list file, logging how much dirty input was dropped."""
    g, stats = read_edge_list(path)
    if stats.self_loops_dropped or stats.duplicates_dropped:
        log.info(
            "%s: dropped %d self-loops and %d duplicate edges",
            path, stats.self_loops_dropped, stats.duplicates_dropped,
        )
    log.info("%s: loaded %d nodes, %d edges", path, g.n, g.m)
    return g


def load_partition_csv(path, g: Graph) -> Partition:
    """Read node_label,community_index rows into a partition of ``g``."""
    import csv

    groups: dict[int, list[int]] = {}
    with open(path, "r", encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            idx = int(row["community_index"])
            groups.setdefault(idx, []).append(g.id_of(row["node_label"]))
    return partition_from_communities(g, [groups[k] for k in sorted(groups)])


@dataclass(frozen=True)
class NetworkSpec:
    """One network of the experiment grid: generated or loaded from disk."""

    ident: str
    kind: str  # "generator" | "file"
    family: str | None = None
    n: int | None = None
    m: int | None = None
    path: str | None = None
    target_communities: int | None = None
    partition_path: str | None = None

    def config_line(self) -> str:
        if self.kind == "generator":
            parts = [self.family, f"n={self.n}", f"m={self.m}"]
        else:
            parts = ["file", f"path={self.path}"]
        if self.target_communities is not None:
            parts.append(f"target={self.target_communities}")
        if self.partition_path:
            parts.append(f"partition={self.partition_path}")
        parts.append(f"id={self.ident}")
        return " ".join(parts)


@dataclass
class ExperimentConfig:
    networks: list[NetworkSpec] = field(default_factory=list)
    methods: list[str] = field(default_factory=lambda: list(METHOD_CODES))
    percents: list[int] = field(default_factory=lambda: [1])
    theta: float = 0.5
    rule: str = "at-least"
    iterations: int = 20
    repetitions: int = 10
    rng_seed: int = 0
    basis: str = "driver-pool"
    target_communities: int | None = None
    large_graph_threshold: int = 10000
    timeout_seconds: float | None = None
    deterministic: bool = False

    def validate(self) -> None:
        if not self.networks:
            raise ValueError("config lists no networks")
        for code in self.methods:
            if code not in METHOD_CODES:
                raise ValueError(f"unknown method {code!r}")
        for p in self.percents:
            if p not in PERCENTS:
                raise ValueError(f"percent {p} not in {PERCENTS}")
        if self.basis not in BASIS_CHOICES:
            raise ValueError(f"basis must be one of {BASIS_CHOICES}")
        if self.iterations < 1 or self.repetitions < 1:
            raise ValueError("iterations and repetitions must be positive")


def _parse_network_line(value: str, index: int) -> NetworkSpec:
    tokens = value.split()
    if not tokens:
        raise ValueError("empty network line")
    head, kv = tokens[0], {}
    for tok in tokens[1:]:
        if "=" not in tok:
            raise ValueError(f"bad network token {tok!r} (expected key=value)")
        k, v = tok.split("=", 1)
        kv[k] = v
    ident = kv.pop("id", f"net{index:03d}")
    target = int(kv.pop("target")) if "target" in kv else None
    partition = kv.pop("partition", None)
    if head == "file":
        path = kv.pop("path", None)
        if not path:
            raise ValueError("file network needs path=...")
        if kv:
            raise ValueError(f"unknown network keys {sorted(kv)}")
        return NetworkSpec(ident, "file", path=path, target_communities=target,
                           partition_path=partition)
    if head not in FAMILIES:
        raise ValueError(f"unknown network kind {head!r}")
    try:
        n, m = int(kv.pop("n")), int(kv.pop("m"))
    except KeyError as missing:
        raise ValueError(f"generator network needs {missing} =") from None
    if kv:
        raise ValueError(f"unknown network keys {sorted(kv)}")
    return NetworkSpec(ident, "generator", family=head, n=n, m=m,
                       target_communities=target, partition_path=partition)


_INFO_PREFIXES = ("seed.", "status.", "info.", "time.", "manifest_version")


def parse_config(text: str, preset: str | None = None) -> ExperimentConfig:
    """Parse ``key = value`` config text; a preset supplies defaults that
    explicit keys override. Manifest bookkeeping lines are ignored, so a
    manifest is itself a loadable config."""
    cfg = ExperimentConfig(networks=[])
    if preset is not None:
        if preset not in PRESETS:
            raise ValueError(f"unknown preset {preset!r}; choose from {sorted(PRESETS)}")
        for key, val in PRESETS[preset].items():
            setattr(cfg, key, list(val) if isinstance(val, tuple) else val)

    net_index = 0
    method_lines: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected key = value")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if any(key.startswith(p) for p in _INFO_PREFIXES):
            continue
        if key == "network":
            cfg.networks.append(_parse_network_line(value, net_index))
            net_index += 1
        elif key == "method":  # repeated lines accumulate
            method_lines.extend(v.strip().lower() for v in value.split(",") if v.strip())
        elif key == "methods":
            cfg.methods = [v.strip().lower() for v in value.split(",") if v.strip()]
        elif key == "percents":
            cfg.percents = [int(v) for v in value.split(",") if v.strip()]
        elif key == "theta":
            cfg.theta = float(value)
        elif key == "rule":
            cfg.rule = value
        elif key == "iterations":
            cfg.iterations = int(value)
        elif key == "repetitions":
            cfg.repetitions = int(value)
        elif key == "rng_seed":
            cfg.rng_seed = int(value)
        elif key == "basis":
            cfg.basis = value
        elif key == "target_communities":
            cfg.target_communities = int(value) if value.lower() not in ("", "none") else None
        elif key == "large_graph_threshold":
            cfg.large_graph_threshold = int(value)
        elif key == "timeout_seconds":
            cfg.timeout_seconds = float(value) if value.lower() not in ("", "none") else None
        elif key == "deterministic":
            cfg.deterministic = value.lower() in ("1", "true", "yes", "on")
        else:
            raise ValueError(f"config line {lineno}: unknown key {key!r}")
    if method_lines:
        cfg.methods = method_lines
    cfg.validate()
    return cfg


def config_lines(cfg: ExperimentConfig) -> list[str]:
    """Render a config back to its textual form (used by the manifest)."""
    lines = [
        f"rng_seed = {cfg.rng_seed}",
        f"theta = {_fmt(cfg.theta)}",
        f"rule = {cfg.rule}",
        f"iterations = {cfg.iterations}",
        f"repetitions = {cfg.repetitions}",
        f"percents = {','.join(str(p) for p in cfg.percents)}",
        f"methods = {','.join(cfg.methods)}",
        f"basis = {cfg.basis}",
        f"large_graph_threshold = {cfg.large_graph_threshold}",
        f"deterministic = {'true' if cfg.deterministic else 'false'}",
    ]
    if cfg.target_communities is not None:
        lines.append(f"target_communities = {cfg.target_communities}")
    if cfg.timeout_seconds is not None:
        lines.append(f"timeout_seconds = {_fmt(cfg.timeout_seconds)}")
    lines.extend(f"network = {spec.config_line()}" for spec in cfg.networks)
    return lines


def _fmt(x: float) -> str:
    return f"{x:.10g}"


def _write_csv(path: Path, header: list[str], rows) -> None:
    import csv

    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


class _NetworkTimeout(Exception):
    def __init__(self, stage: str):
        super().__init__(stage)
        self.stage = stage


def run_experiment(cfg: ExperimentConfig, out_dir) -> Path:
    """Run the whole grid; returns the manifest path.

    Layout: one directory per network holding its partition, driver stats,
    per-cell traces and the gain table; the manifest sits at the top.
    """
    cfg.validate()
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    manifest: list[str] = ["manifest_version = 1"]
    manifest.extend(config_lines(cfg))

    for spec in cfg.networks:
        t_start = time.monotonic()

        def checkpoint(stage: str) -> None:
            if cfg.timeout_seconds is not None and time.monotonic() - t_start > cfg.timeout_seconds:
                raise _NetworkTimeout(stage)

        try:
            _run_network(cfg, spec, out, manifest, checkpoint)
            manifest.append(f"status.{spec.ident} = ok")
        except _NetworkTimeout as exc:
            manifest.append(f"status.{spec.ident} = timeout at stage {exc.stage}")
        except Exception as exc:  # per-item failure: record and continue
            manifest.append(f"status.{spec.ident} = error: {exc}")
        manifest.append(f"time.{spec.ident} = {_fmt(time.monotonic() - t_start)}")

    manifest_path = out / MANIFEST_NAME
    with open(manifest_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(manifest) + "\n")
    return manifest_path


def _run_network(cfg, spec, out: Path, manifest: list[str], checkpoint) -> None:
    net_dir = out / spec.ident
    net_dir.mkdir(parents=True, exist_ok=True)

    # --- graph -------------------------------------------------------------
    if spec.kind == "generator":
        gseed = mix_seed(cfg.rng_seed, spec.ident, "graph")
        manifest.append(f"seed.{spec.ident}.graph = {gseed}")
        g = generate(GeneratorSpec(spec.family, spec.n, spec.m, rng_seed=gseed))
        family = spec.family
    else:
        g = load_edge_list(spec.path)
        family = "file"
    manifest.append(f"info.{spec.ident}.nodes = {g.n}")
    manifest.append(f"info.{spec.ident}.edges = {g.m}")
    checkpoint("graph")

    # --- communities ---------------------------------------------------------
    partition = None
    partition_error = None
    target = spec.target_communities or cfg.target_communities
    try:
        if spec.partition_path:
            partition = load_partition_csv(spec.partition_path, g)
        elif g.n > cfg.large_graph_threshold and target is None:
            raise ValueError(
                f"{g.n} nodes exceeds the exact-detection threshold "
                f"({cfg.large_graph_threshold}); set target= or partition="
            )
        else:
            partition = girvan_newman(g, target=target)
    except Exception as exc:
        partition_error = str(exc)
        manifest.append(f"status.{spec.ident}.communities = error: {exc}")
    checkpoint("communities")

    if partition is not None:
        membership = partition.community_of()
        _write_csv(
            net_dir / "partition.csv",
            ["node_label", "community_index"],
            [(g.labels[v], membership[v]) for v in range(g.n)],
        )

    # --- drivers -------------------------------------------------------------
    dseed = mix_seed(cfg.rng_seed, spec.ident, "drivers")
    manifest.append(f"seed.{spec.ident}.drivers = {dseed}")
    global_drivers = greedy_mds(g, rng_seed=dseed, deterministic=cfg.deterministic)
    driver_rows = [(g.labels[v], "global") for v in global_drivers.sorted_nodes()]
    if partition is not None:
        for dset in community_drivers(g, partition, rng_seed=dseed, deterministic=cfg.deterministic):
            driver_rows.extend((g.labels[v], dset.scope) for v in dset.sorted_nodes())
        stats = driver_stats(g, partition, rng_seed=dseed, deterministic=cfg.deterministic)
        _write_csv(net_dir / "driver_stats.csv", ["ndn", "ndnc", "diff"],
                   [(stats.ndn, stats.ndnc, stats.diff)])
    _write_csv(net_dir / "drivers.csv", ["node_label", "scope"], driver_rows)
    checkpoint("drivers")

    # --- diffusion cells -------------------------------------------------------
    ltm_cfg = LtmConfig(theta=cfg.theta, max_iterations=cfg.iterations, rule=cfg.rule)
    counts: dict[tuple[str, int, int], int] = {}
    for method in cfg.methods:
        scope = METHOD_CODES[method].scope
        for percent in cfg.percents:
            for rep in range(cfg.repetitions):
                cell = f"{spec.ident}.{method}.p{percent}.r{rep}"
                if scope == "community" and partition is None:
                    manifest.append(
                        f"status.{cell} = error: no partition ({partition_error})"
                    )
                    continue
                cseed = mix_seed(cfg.rng_seed, spec.ident, method, percent, rep)
                manifest.append(f"seed.{cell} = {cseed}")
                try:
                    seeds = select_seeds(
                        g, method, percent, p=partition, theta=cfg.theta,
                        rule=cfg.rule, rng_seed=cseed, basis=cfg.basis,
                        deterministic=cfg.deterministic,
                    )
                    trace = ltm_run(g, seeds.nodes, ltm_cfg)
                except Exception as exc:
                    manifest.append(f"status.{cell} = error: {exc}")
                    continue
                _validate_trace(trace)
                counts[(method, percent, rep)] = trace.count_at(cfg.iterations)
                _write_csv(
                    net_dir / f"trace_{method}_p{percent}_r{rep}.csv",
                    ["iteration", "newly_activated", "cumulative"],
                    [
                        (row.iteration,
                         ";".join(g.labels[v] for v in row.newly_activated),
                         row.cumulative)
                        for row in trace.rows
                    ],
                )
                checkpoint(f"cell {cell}")

    # --- gain table ------------------------------------------------------------
    if partition is not None:
        cd_mean, cd_sd = average_community_density(partition)
        communities = len(partition)
    else:
        cd_mean = cd_sd = float("nan")
        communities = 0
    gain_rows = []
    for percent in cfg.percents:
        for method_a in cfg.methods:
            for method_b in cfg.methods:
                if method_a == method_b:
                    continue
                gains = [
                    percent_gain(counts[(method_a, percent, r)], counts[(method_b, percent, r)], g.n)
                    for r in range(cfg.repetitions)
                    if (method_a, percent, r) in counts and (method_b, percent, r) in counts
                ]
                if not gains:
                    continue
                gain_rows.append(
                    (spec.ident, family, g.n, g.m, communities,
                     _fmt(cd_mean), _fmt(cd_sd), method_a, method_b, percent,
                     cfg.iterations, _fmt(sum(gains) / len(gains)))
                )
    _write_csv(
        net_dir / "gains.csv",
        ["network_id", "family", "n", "m", "communities", "cd_mean", "cd_sd",
         "method_a", "method_b", "percent", "iteration", "gain"],
        gain_rows,
    )


def _validate_trace(trace: DiffusionTrace) -> None:
    """Cheap invariant check applied to every trace the harness writes."""
    prev = -1
    seen: set[int] = set()
    for row in trace.rows:
        if row.cumulative < prev:
            raise AssertionError("trace cumulative counts decreased")
        prev = row.cumulative
        overlap = seen.intersection(row.newly_activated)
        if overlap:
            raise AssertionError(f"nodes activated twice: {sorted(overlap)}")
        seen.update(row.newly_activated)
    if trace.rows[0].iteration != 0:
        raise AssertionError("trace must start at iteration 0")


def replay(manifest_path, out_dir) -> Path:
    """Re-run an experiment from its manifest; outputs are byte-identical."""
    text = Path(manifest_path).read_text(encoding="utf-8")
    cfg = parse_config(text)
    return run_experiment(cfg, out_dir)
