"""Command-line entry point.

One subcommand per pipeline stage (generate, centrality, communities,
drivers, seed, simulate, gain) plus ``experiment`` for full config-driven
runs. Everything reads and writes plain edge-list and CSV files so stages
can be mixed with other tooling.
"""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from pathlib import Path

from . import experiment as exp
from .centrality import (
    CENTRALITY_KINDS,
    betweenness_centrality,
    closeness_centrality,
    degree_centrality,
)
from .community import girvan_newman
from .diffusion import RULES, DiffusionTrace, LtmConfig, TraceRow, ltm_run
from .drivers import community_drivers, driver_stats, greedy_mds
from .generators import FAMILIES, GeneratorSpec, generate
from .graph import write_edge_list
from .metrics import gain_table
from .seeding import BASIS_CHOICES, METHOD_CODES, PERCENTS, select_seeds


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="driverseed",
        description="Driver-node seed selection and threshold-diffusion experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a synthetic network as an edge list")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--nodes", required=True, type=int)
    p.add_argument("--edges", required=True, type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("centrality", help="per-node centrality scores as CSV")
    p.add_argument("--kind", required=True, choices=CENTRALITY_KINDS)
    p.add_argument("--graph", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_centrality)

    p = sub.add_parser("communities", help="divisive community detection as CSV")
    p.add_argument("--graph", required=True)
    p.add_argument("--target", type=int, default=None,
                   help="stop at exactly this many communities (default: max modularity)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_communities)

    p = sub.add_parser("drivers", help="greedy dominating-set driver nodes as CSV")
    p.add_argument("--graph", required=True)
    p.add_argument("--partition", default=None, help="community CSV for per-community drivers")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--deterministic", action="store_true",
                   help="break ties by lowest node id instead of the seeded draw")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_drivers)

    p = sub.add_parser("seed", help="build a seed set with one of the twelve methods")
    p.add_argument("--graph", required=True)
    p.add_argument("--method", required=True, choices=sorted(METHOD_CODES))
    p.add_argument("--percent", required=True, type=int, choices=PERCENTS)
    p.add_argument("--partition", default=None)
    p.add_argument("--basis", default="driver-pool", choices=BASIS_CHOICES)
    p.add_argument("--theta", type=float, default=0.5)
    p.add_argument("--rule", default="at-least", choices=RULES)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--deterministic", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_seed)

    p = sub.add_parser("simulate", help="run the threshold cascade from a seed CSV")
    p.add_argument("--graph", required=True)
    p.add_argument("--seeds", required=True, help="CSV with a node_label column")
    p.add_argument("--theta", type=float, default=0.5)
    p.add_argument("--iters", type=int, default=20)
    p.add_argument("--rule", default="at-least", choices=RULES)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("gain", help="pairwise percent-gain table from trace CSVs")
    p.add_argument("--trace", action="append", required=True, metavar="NAME=FILE",
                   help="repeatable: method name and its trace CSV")
    p.add_argument("--nodes", required=True, type=int, help="network node count")
    p.add_argument("--at-iteration", type=int, default=20)
    p.add_argument("--network-id", default="")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gain)

    p = sub.add_parser("experiment", help="run (or replay) a full experiment grid")
    p.add_argument("--config", default=None)
    p.add_argument("--preset", default=None, choices=sorted(exp.PRESETS))
    p.add_argument("--replay", default=None, metavar="MANIFEST",
                   help="re-run from a manifest instead of a config")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_experiment)

    return parser


def _write_rows(path: str, header: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def cmd_generate(args) -> int:
    g = generate(GeneratorSpec(args.family, args.nodes, args.edges, rng_seed=args.seed))
    write_edge_list(g, args.out)
    print(f"wrote {args.out}: {g.n} nodes, {g.m} edges")
    return 0


def cmd_centrality(args) -> int:
    g = exp.load_edge_list(args.graph)
    fn = {
        "degree": degree_centrality,
        "closeness": closeness_centrality,
        "betweenness": betweenness_centrality,
    }[args.kind]
    scores = fn(g)
    _write_rows(args.out, ["node_label", "score"],
                [(g.labels[v], f"{scores.values[v]:.10g}") for v in range(g.n)])
    return 0


def cmd_communities(args) -> int:
    g = exp.load_edge_list(args.graph)
    part = girvan_newman(g, target=args.target)
    membership = part.community_of()
    _write_rows(args.out, ["node_label", "community_index"],
                [(g.labels[v], membership[v]) for v in range(g.n)])
    print(f"{len(part)} communities, modularity {part.modularity:.4f}")
    return 0


def cmd_drivers(args) -> int:
    g = exp.load_edge_list(args.graph)
    rows = [(g.labels[v], "global")
            for v in greedy_mds(g, rng_seed=args.seed, deterministic=args.deterministic).sorted_nodes()]
    if args.partition:
        part = exp.load_partition_csv(args.partition, g)
        for dset in community_drivers(g, part, rng_seed=args.seed, deterministic=args.deterministic):
            rows.extend((g.labels[v], dset.scope) for v in dset.sorted_nodes())
        stats = driver_stats(g, part, rng_seed=args.seed, deterministic=args.deterministic)
        print(f"NDN={stats.ndn} NDNC={stats.ndnc} Diff={stats.diff}")
    _write_rows(args.out, ["node_label", "scope"], rows)
    return 0


def cmd_seed(args) -> int:
    g = exp.load_edge_list(args.graph)
    part = exp.load_partition_csv(args.partition, g) if args.partition else None
    chosen = select_seeds(
        g, args.method, args.percent, p=part, theta=args.theta, rule=args.rule,
        rng_seed=args.seed, basis=args.basis, deterministic=args.deterministic,
    )
    _write_rows(args.out, ["node_label"], [(g.labels[v],) for v in chosen.nodes])
    print(f"{len(chosen)} seed nodes ({args.method}, {args.percent}% of {args.basis})")
    return 0


def cmd_simulate(args) -> int:
    g = exp.load_edge_list(args.graph)
    seeds = [g.id_of(label) for label in _read_labels(args.seeds)]
    cfg = LtmConfig(theta=args.theta, max_iterations=args.iters, rule=args.rule)
    trace = ltm_run(g, seeds, cfg)
    _write_rows(
        args.out,
        ["iteration", "newly_activated", "cumulative"],
        [(row.iteration, ";".join(g.labels[v] for v in row.newly_activated), row.cumulative)
         for row in trace.rows],
    )
    print(f"influenced {trace.final_count}/{g.n} nodes in {trace.rows[-1].iteration} iterations"
          f" (converged: {trace.converged})")
    return 0


def cmd_gain(args) -> int:
    traces = {}
    for item in args.trace:
        if "=" not in item:
            raise ValueError(f"--trace expects NAME=FILE, got {item!r}")
        name, path = item.split("=", 1)
        traces[name] = _read_trace(path, args.nodes)
    report = gain_table(traces, args.nodes, args.at_iteration, network_id=args.network_id)
    rows = [
        (report.network_id, report.n, method_a, method_b, report.at_iteration,
         f"{report.gain(method_a, method_b):.10g}")
        for method_a in report.methods()
        for method_b in report.methods()
        if method_a != method_b
    ]
    _write_rows(args.out, ["network_id", "n", "method_a", "method_b", "iteration", "gain"], rows)
    return 0


def cmd_experiment(args) -> int:
    out = Path(args.out)
    if args.replay:
        manifest = exp.replay(args.replay, out)
    else:
        if not args.config and not args.preset:
            raise ValueError("experiment needs --config and/or --preset (or --replay)")
        text = Path(args.config).read_text(encoding="utf-8") if args.config else ""
        cfg = exp.parse_config(text, preset=args.preset)
        manifest = exp.run_experiment(cfg, out)
    print(f"manifest: {manifest}")
    return 0


def _read_labels(path: str) -> list[str]:
    """Node labels from a CSV with a node_label column, or one label per line."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        first = fh.readline()
        fh.seek(0)
        if "node_label" in first:
            return [row["node_label"] for row in csv.DictReader(fh)]
        return [line.strip().split(",")[0] for line in fh if line.strip()]


def _read_trace(path: str, n: int) -> DiffusionTrace:
    """Counts-only trace from CSV; gain tables never look at the node sets."""
    rows = []
    last_had_news = False
    with open(path, "r", encoding="utf-8", newline="") as fh:
        for rec in csv.DictReader(fh):
            last_had_news = bool(rec["newly_activated"])
            rows.append(TraceRow(int(rec["iteration"]), (), int(rec["cumulative"])))
    if not rows:
        raise ValueError(f"{path}: empty trace")
    converged = not last_had_news or rows[-1].cumulative == n
    return DiffusionTrace(tuple(rows), converged=converged, n=n)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
