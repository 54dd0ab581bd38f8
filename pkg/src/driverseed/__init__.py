"""Driver-node seed selection and linear-threshold influence experiments.

Pipeline: build or load an undirected graph, detect communities by divisive
edge removal, find driver nodes as greedy dominating sets (globally and per
community), rank them with centrality-based strategies, pick the top slice
as seeds, and simulate threshold diffusion to compare methods by percent
gain.
"""

from .centrality import (
    CentralityScores,
    betweenness_centrality,
    closeness_centrality,
    degree_centrality,
    edge_betweenness,
)
from .community import (
    Partition,
    average_community_density,
    girvan_newman,
    modularity,
    partition_from_communities,
)
from .diffusion import DiffusionTrace, LtmConfig, TraceRow, ltm_run
from .drivers import (
    DriverSet,
    DriverStats,
    community_drivers,
    driver_stats,
    greedy_mds,
    is_dominating_set,
)
from .experiment import (
    ExperimentConfig,
    NetworkSpec,
    load_edge_list,
    mix_seed,
    parse_config,
    replay,
    run_experiment,
)
from .generators import GeneratorSpec, generate
from .graph import (
    Graph,
    connected_components,
    density,
    induced_subgraph,
    read_edge_list,
    write_edge_list,
)
from .metrics import GainReport, gain_table, percent_gain
from .seeding import (
    METHOD_CODES,
    RankedDrivers,
    SeedMethod,
    SeedSet,
    parse_method,
    rank_drivers,
    rank_kempe,
    select_global,
    select_multiround,
    select_seeds,
)

__version__ = "0.1.0"

__all__ = [
    "CentralityScores", "betweenness_centrality", "closeness_centrality",
    "degree_centrality", "edge_betweenness",
    "Partition", "average_community_density", "girvan_newman", "modularity",
    "partition_from_communities",
    "DiffusionTrace", "LtmConfig", "TraceRow", "ltm_run",
    "DriverSet", "DriverStats", "community_drivers", "driver_stats",
    "greedy_mds", "is_dominating_set",
    "ExperimentConfig", "NetworkSpec", "load_edge_list", "mix_seed",
    "parse_config", "replay", "run_experiment",
    "GeneratorSpec", "generate",
    "Graph", "connected_components", "density", "induced_subgraph",
    "read_edge_list", "write_edge_list",
    "GainReport", "gain_table", "percent_gain",
    "METHOD_CODES", "RankedDrivers", "SeedMethod", "SeedSet", "parse_method",
    "rank_drivers", "rank_kempe", "select_global", "select_multiround",
    "select_seeds",
]
