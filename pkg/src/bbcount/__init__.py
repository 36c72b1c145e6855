"""Balanced butterfly counting in signed bipartite graphs.

A butterfly is a (2,2)-biclique; it is balanced when it carries an even
number of negative edges.  The package provides a validated stack of
counting engines (brute-force oracle, serial wedge buckets, a multi-process
engine, and deterministic models of tiled / dynamically scheduled block
execution), plus edge-list ingestion and a CLI.
"""

from .buckets import (
    WedgeCounters,
    WedgeKind,
    count_balanced_2k_serial,
    count_balanced_parallel,
    wedge_kind,
    wedge_scan_bound,
)
from .errors import (
    BBCountError,
    CountOverflowError,
    DuplicateEdgeError,
    EmptySideError,
    IndexOutOfRangeError,
    InvalidKError,
    InvalidSignValueError,
    InvalidThresholdsError,
    MalformedLineError,
    MissingValueError,
    NoWorkError,
)
from .graph import EdgeSign, GraphStats, Side, SignedBipartiteGraph, VertexRef, build
from .ingest import (
    ExplicitSign,
    ParseResult,
    RandomBernoulli,
    RatingThreshold,
    RawEdge,
    apply_sign_policy,
    dedup_latest,
    dump_edge_list,
    load_graph,
    parse_edge_list,
    to_graph,
)
from .oracle import (
    Butterfly,
    ButterflyClassCounts,
    classify_butterflies,
    count_balanced_2k_bruteforce,
    count_balanced_bruteforce,
    enumerate_butterflies,
    is_balanced,
    sign_product_total,
)
from .tiled import (
    CooperationRegime,
    ScheduleReport,
    TileConfig,
    count_balanced_dynamic,
    count_balanced_tiled,
    load_imbalance,
    regime_for_degree,
)

__version__ = "0.1.0"

__all__ = [
    "BBCountError",
    "Butterfly",
    "ButterflyClassCounts",
    "CooperationRegime",
    "CountOverflowError",
    "DuplicateEdgeError",
    "EdgeSign",
    "EmptySideError",
    "ExplicitSign",
    "GraphStats",
    "IndexOutOfRangeError",
    "InvalidKError",
    "InvalidSignValueError",
    "InvalidThresholdsError",
    "MalformedLineError",
    "MissingValueError",
    "NoWorkError",
    "ParseResult",
    "RandomBernoulli",
    "RatingThreshold",
    "RawEdge",
    "ScheduleReport",
    "Side",
    "SignedBipartiteGraph",
    "TileConfig",
    "VertexRef",
    "WedgeCounters",
    "WedgeKind",
    "apply_sign_policy",
    "build",
    "classify_butterflies",
    "count_balanced_2k_bruteforce",
    "count_balanced_2k_serial",
    "count_balanced_bruteforce",
    "count_balanced_dynamic",
    "count_balanced_parallel",
    "count_balanced_tiled",
    "dedup_latest",
    "dump_edge_list",
    "enumerate_butterflies",
    "is_balanced",
    "load_graph",
    "load_imbalance",
    "parse_edge_list",
    "regime_for_degree",
    "sign_product_total",
    "to_graph",
    "wedge_kind",
    "wedge_scan_bound",
]
