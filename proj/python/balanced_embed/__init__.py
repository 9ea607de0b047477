"""Balanced measures and 1-Lipschitz embeddings of graphs.

Exact weights are passed and returned as fractions.Fraction; float weights
select double-precision checks.
"""

from ._core import (
    DistanceMatrix,
    Graph,
    GuaranteeViolation,
    InputError,
    boundary,
    complete,
    cycle,
    distances,
    embed,
    embed_document,
    energy,
    erdos_renyi,
    gaussian_clouds,
    glued_paths,
    greedy,
    greedy_document,
    grid,
    is_balanced,
    knn_graph,
    named,
    named_graphs,
    oracle,
    path,
    rank_correlation,
    refine,
    star,
    swiss_roll,
    transport_costs,
)

__all__ = [
    "DistanceMatrix",
    "Graph",
    "GuaranteeViolation",
    "InputError",
    "boundary",
    "complete",
    "cycle",
    "distances",
    "embed",
    "embed_document",
    "energy",
    "erdos_renyi",
    "gaussian_clouds",
    "glued_paths",
    "greedy",
    "greedy_document",
    "grid",
    "is_balanced",
    "knn_graph",
    "named",
    "named_graphs",
    "oracle",
    "path",
    "rank_correlation",
    "refine",
    "star",
    "swiss_roll",
    "transport_costs",
]
