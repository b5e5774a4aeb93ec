"""Temporal betweenness centrality for shortest, restless and foremost walks."""

from .analysis_cli import Ranking, kendall_tau, prefix_scan, time_histogram, top_k_intersection
from .betweenness_engine import BetweennessResult, b_node, b_time, compute_betweenness
from .dependency_accumulation import DependencyTable, accumulate, before_time
from .static_baseline import brandes_static
from .shortest_walks import PredecessorData, successors, temporal_bfs
from .walk_counting import WalkCounts, compute_walk_counts
from .errors import (
    ConfigError,
    CountOverflowError,
    GraphFormatError,
    InvariantError,
    SizeGuardError,
)
from .exhaustive_oracle import EnumeratedWalk, enumerate_optimal_walks, oracle_betweenness
from .temporal_graph import (
    StaticGraph,
    TemporalGraph,
    VariantConfig,
    aggregate_static,
    compress_times,
    parse_edge_list,
    prefix_graph,
    serialize_edge_list,
)

__version__ = "0.1.0"

__all__ = [
    "BetweennessResult",
    "ConfigError",
    "CountOverflowError",
    "DependencyTable",
    "EnumeratedWalk",
    "GraphFormatError",
    "InvariantError",
    "PredecessorData",
    "Ranking",
    "SizeGuardError",
    "StaticGraph",
    "TemporalGraph",
    "VariantConfig",
    "WalkCounts",
    "accumulate",
    "aggregate_static",
    "b_node",
    "b_time",
    "before_time",
    "brandes_static",
    "compress_times",
    "compute_betweenness",
    "compute_walk_counts",
    "enumerate_optimal_walks",
    "kendall_tau",
    "oracle_betweenness",
    "parse_edge_list",
    "prefix_graph",
    "prefix_scan",
    "serialize_edge_list",
    "successors",
    "temporal_bfs",
    "time_histogram",
    "top_k_intersection",
]
