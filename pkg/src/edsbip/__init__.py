"""Efficient dominating sets in bipartite graphs with forbidden induced subgraphs."""

from .eds import FOUND, NO_EDS, NOT_APPLICABLE, SolverOutcome, brute_force_eds, is_eds
from .graph import Graph, build_graph
from .recognize import Pattern, classify, contains_induced
from .solvers import dispatch

__version__ = "0.1.0"

__all__ = [
    "FOUND",
    "Graph",
    "NOT_APPLICABLE",
    "NO_EDS",
    "Pattern",
    "SolverOutcome",
    "brute_force_eds",
    "build_graph",
    "classify",
    "contains_induced",
    "dispatch",
    "is_eds",
]
