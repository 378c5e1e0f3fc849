"""Topology-only local alignment of undirected graphs.

The package splits the job into stages that also stand alone: graphlet
canonization, deterministic indexing, seed discovery across two indexes,
orbit participation vectors, stochastic seed merging, and scoring. The
`pipeline` module chains them; the `localign` console script exposes each
stage as a subcommand.
"""

from .aligning import (
    PatchedGraphlet,
    SeedAlignment,
    align_nodes,
    find_aligned_pairs,
    patch_index,
    read_seeds,
    specificity_bound,
    write_seeds,
)
from .errors import DisconnectedGraphletError, GraphFormatError, LocalignError
from .generate import preferential_attachment
from .graphs import (
    Graph,
    degree_stats,
    load_edge_list,
    perturb_edges,
    save_edge_list,
    write_degree_stats,
)
from .graphlets import (
    MAX_K,
    MIN_K,
    CanonicalGraphletId,
    GraphletEncoding,
    OrbitPartition,
    alignment_multiplicity,
    canonize,
    encode_graphlet,
    enumerate_connected_graphlets,
    is_ambiguous,
    orbits,
)
from .indexing import (
    IndexEntry,
    IndexParams,
    create_index,
    expand_neighbors,
    read_index,
    write_index,
)
from .merging import MergedAlignment, MergeParams, merge
from .metrics import (
    alignment_score,
    identity_truth,
    largest_connected_alignment,
    node_correctness,
    read_alignment,
    read_truth,
    s3_score,
    write_alignment,
)
from .odv import (
    alignment_mean_odv,
    compute_odv,
    load_weights,
    odv_similarity,
    orbit_count,
    read_odv,
    uniform_weights,
    write_odv,
)
from .pipeline import (
    EvalReport,
    PipelineParams,
    ensure_index,
    ensure_odv,
    graph_digest,
    run_pipeline,
    write_report,
)
from .temporal import TemporalEdgeStream, WindowCaps, build_windows, load_temporal

__version__ = "0.1.0"

__all__ = [
    "CanonicalGraphletId",
    "DisconnectedGraphletError",
    "EvalReport",
    "Graph",
    "GraphFormatError",
    "GraphletEncoding",
    "IndexEntry",
    "IndexParams",
    "LocalignError",
    "MAX_K",
    "MIN_K",
    "MergeParams",
    "MergedAlignment",
    "OrbitPartition",
    "PatchedGraphlet",
    "PipelineParams",
    "SeedAlignment",
    "TemporalEdgeStream",
    "WindowCaps",
    "align_nodes",
    "alignment_mean_odv",
    "alignment_multiplicity",
    "alignment_score",
    "build_windows",
    "canonize",
    "compute_odv",
    "create_index",
    "degree_stats",
    "encode_graphlet",
    "ensure_index",
    "ensure_odv",
    "enumerate_connected_graphlets",
    "expand_neighbors",
    "find_aligned_pairs",
    "graph_digest",
    "identity_truth",
    "is_ambiguous",
    "largest_connected_alignment",
    "load_edge_list",
    "load_temporal",
    "load_weights",
    "merge",
    "node_correctness",
    "odv_similarity",
    "orbit_count",
    "orbits",
    "patch_index",
    "perturb_edges",
    "preferential_attachment",
    "read_alignment",
    "read_index",
    "read_odv",
    "read_seeds",
    "read_truth",
    "run_pipeline",
    "s3_score",
    "save_edge_list",
    "specificity_bound",
    "uniform_weights",
    "write_alignment",
    "write_degree_stats",
    "write_index",
    "write_odv",
    "write_report",
    "write_seeds",
]
