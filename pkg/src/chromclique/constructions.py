"""Extremal graphs with chromatic number ``n - k`` and their claimed clique numbers."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ContractViolation, DiscrepancyError
from .graph import Graph, add_dominating_vertex, complement, cycle, disjoint_union, edgeless, path
from .solvers import chromatic_number, clique_number


@dataclass(frozen=True)
class ConstructionReport:
    family: str
    n: int
    k: int
    graph: Graph
    claimed_chi: int
    claimed_omega: int
    verified: bool = False


def conjectured_q(n: int, k: int) -> int:
    """Conjectured ``Q(n, n-k) = n - 2k + ceil(k/2)``; known false for large k."""
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    return n - 2 * k + math.ceil(k / 2)


def kn_minus_odd_cycle(n: int, k: int) -> ConstructionReport:
    """``K_n`` with the edges of a ``C_{2k+1}`` on vertices ``0..2k`` removed.

    The complement is ``C_{2k+1}`` plus isolated vertices, so chi = n - k and
    omega = n - k - 1.
    """
    if k < 2 or n < 2 * k + 1:
        raise ContractViolation(f"need n >= 2k+1 >= 5, got n={n}, k={k}")
    hole = disjoint_union(cycle(2 * k + 1), edgeless(n - 2 * k - 1))
    return ConstructionReport("kn-minus-cycle", n, k, complement(hole), n - k, n - k - 1)


def jw_threshold(k: int) -> int:
    return math.ceil(5 * k / 2)


def jw_base(k: int) -> Graph:
    """Complement of ``(k/2) C_5`` for even k, of ``((k-1)/2) C_5 + P_3`` for odd k."""
    if k < 1:
        raise ContractViolation(f"k must be positive, got {k}")
    parts = [cycle(5)] * (k // 2)
    if k % 2:
        parts.append(path(3))
    base = parts[0]
    for part in parts[1:]:
        base = disjoint_union(base, part)
    return complement(base)


def jw_graph(n: int, k: int) -> ConstructionReport:
    """The base graph padded with dominating vertices up to order ``n``."""
    if k < 1:
        raise ContractViolation(f"k must be positive, got {k}")
    if n < jw_threshold(k):
        raise ContractViolation(f"need n >= ceil(5k/2) = {jw_threshold(k)}, got n={n}")
    g = jw_base(k)
    while g.n < n:
        g = add_dominating_vertex(g)
    return ConstructionReport("jw", n, k, g, n - k, conjectured_q(n, k))


FAMILIES = {"kn-minus-cycle": kn_minus_odd_cycle, "jw": jw_graph}


def build(family: str, n: int, k: int) -> ConstructionReport:
    try:
        make = FAMILIES[family]
    except KeyError:
        raise ContractViolation(f"unknown family {family!r}; choose from {sorted(FAMILIES)}") from None
    return make(n, k)


def verify_construction(report: ConstructionReport) -> ConstructionReport:
    """Recompute chi and omega exactly; raise on any disagreement with the claims."""
    chi, coloring = chromatic_number(report.graph)
    omega, clique = clique_number(report.graph)
    assert coloring.is_proper(report.graph) and coloring.num_colors == chi
    assert report.graph.is_clique(clique) and clique.bit_count() == omega
    claimed = {"chi": report.claimed_chi, "omega": report.claimed_omega}
    computed = {"chi": chi, "omega": omega}
    if claimed != computed:
        raise DiscrepancyError(f"{report.family}(n={report.n}, k={report.k})", claimed, computed)
    return ConstructionReport(
        report.family, report.n, report.k, report.graph, chi, omega, verified=True
    )

