"""Exact and spectral multi-way expansion constants for finite graphs.

The package computes expansion constants and k-way expansion constants
exactly (with witnesses), Laplacian spectra and Cheeger-type bounds,
runs a recursive minimum-cut partitioning procedure with a certified
trace, generates the graph families the suites need, and machine-checks
the inequalities tying all of these together.
"""

from .errors import (
    CapExceededError,
    EigensolverError,
    GraphInputError,
    MWCError,
    UnsplittableError,
)
from .expansion import (
    CutWitness,
    KwayWitness,
    boundary_ratio_profile,
    expansion_exact,
    induced_expansion,
    kpartition_masks,
    kway_expansion_exact,
)
from .graphs import (
    Graph,
    bfs_distances,
    boundary_edges,
    complement_subgraph,
    connected_components,
    induced_subgraph,
    is_connected,
    max_degree,
    relative_boundary,
)
from .rational import INFINITY, format_ratio, parse_ratio

__all__ = [
    "CapExceededError",
    "CutWitness",
    "EigensolverError",
    "Graph",
    "GraphInputError",
    "INFINITY",
    "KwayWitness",
    "MWCError",
    "UnsplittableError",
    "bfs_distances",
    "boundary_edges",
    "boundary_ratio_profile",
    "complement_subgraph",
    "connected_components",
    "expansion_exact",
    "format_ratio",
    "induced_expansion",
    "induced_subgraph",
    "is_connected",
    "kpartition_masks",
    "kway_expansion_exact",
    "max_degree",
    "parse_ratio",
    "relative_boundary",
]
