"""Minimum clique number of graphs with given order and chromatic number.

Exact bitset solvers, exhaustive Q(n, c) tables, extremal constructions, a
constructive clique-or-recoloring engine for chi = n - k, and an empirical
check of the greedy independent-set coloring bound.
"""

from .errors import (
    CapacityError,
    ContractViolation,
    DiscrepancyError,
    Graph6Error,
    NotFoundError,
    TheoremFalsified,
)
from .graph import Graph, complement, complete, cycle, from_graph6, path, to_graph6
from .solvers import Coloring, chromatic_number, clique_number, independence_number

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "Coloring",
    "ContractViolation",
    "DiscrepancyError",
    "Graph",
    "Graph6Error",
    "NotFoundError",
    "TheoremFalsified",
    "chromatic_number",
    "clique_number",
    "complement",
    "complete",
    "cycle",
    "from_graph6",
    "independence_number",
    "path",
    "to_graph6",
]
