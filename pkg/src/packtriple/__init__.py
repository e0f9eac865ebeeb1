"""List packing of graph triples: solvers, hypothesis checkers, generators and an enumeration verifier."""

from .core import (
    DegreeSummary,
    Graph,
    PackingMap,
    Residual,
    Triple,
    add_yellow,
    are_isomorphic,
    build_triple,
    degrees,
    delete_pair,
    delete_pairs,
    empty_triple,
    has_clique,
    is_complete_bipartite_balanced,
    is_packing,
    is_perfect_matching,
    max_degrees,
    relabel_triple,
    transpose,
)

__version__ = "0.1.0"

__all__ = [
    "DegreeSummary",
    "Graph",
    "PackingMap",
    "Residual",
    "Triple",
    "add_yellow",
    "are_isomorphic",
    "build_triple",
    "degrees",
    "delete_pair",
    "delete_pairs",
    "empty_triple",
    "has_clique",
    "is_complete_bipartite_balanced",
    "is_packing",
    "is_perfect_matching",
    "max_degrees",
    "relabel_triple",
    "transpose",
]
