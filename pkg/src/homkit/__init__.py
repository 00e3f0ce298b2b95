"""Exact combinatorics toolkit: homomorphism counting, quantum graphs,
line-graph algorithms, and reduction gadgets, all at desk scale with
exact arithmetic."""

from .graphs import (
    Graph,
    SetPartition,
    VertexColoring,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    odd_girth,
    path_graph,
    quotient,
    star_graph,
    tensor_product,
)

__all__ = [
    "Graph",
    "SetPartition",
    "VertexColoring",
    "complete_graph",
    "cycle_graph",
    "disjoint_union",
    "empty_graph",
    "odd_girth",
    "path_graph",
    "quotient",
    "star_graph",
    "tensor_product",
]
