"""Cocomparability orderings, maximal antichain lattices and maximal interval subgraphs."""
from .chainclique import (
    CliqueChain,
    chain_index,
    chainclique,
    maximal_chordal_subgraph,
    maximal_interval_subgraph,
    simplicial_vertices,
    simplicial_vertices_from_cocomp,
)
from .graph import Graph, VertexOrdering, load_graph, load_ordering, parse_graph
from .poset import ImplicitPoset, MALattice, build_lattice, is_cocomp_ordering, is_interval_ordering
from .report import CapExceededError, NotMaximalError, PreconditionError, VerificationReport
from .searches import lbfs, lbfs_plus, ldfs, local_mns, local_mns_plus, mcs

__all__ = [
    "CliqueChain",
    "chain_index",
    "chainclique",
    "maximal_chordal_subgraph",
    "maximal_interval_subgraph",
    "simplicial_vertices",
    "simplicial_vertices_from_cocomp",
    "Graph",
    "VertexOrdering",
    "load_graph",
    "load_ordering",
    "parse_graph",
    "ImplicitPoset",
    "MALattice",
    "build_lattice",
    "is_cocomp_ordering",
    "is_interval_ordering",
    "CapExceededError",
    "NotMaximalError",
    "PreconditionError",
    "VerificationReport",
    "lbfs",
    "lbfs_plus",
    "ldfs",
    "local_mns",
    "local_mns_plus",
    "mcs",
]
