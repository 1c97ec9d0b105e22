"""Sparse-clique graphs need few colors: chi = O(n^((q-2)/(q-1))) when omega < q.

The argument colors greedily by maximum independent sets. A graph with no
q-clique on n vertices has an independent set of size ceil(k(n)) by the
Ramsey bound, and iterating that estimate bounds the number of rounds.
Here the rounds are run for real on sample graphs and the growth exponent
is fitted on a log-log scale.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ContractViolation
from .graph import Graph, bits, complement, cycle, disjoint_union, induced, lift, path
from .solvers import Coloring, clique_number, independence_number, lex_min_max_clique

MAX_SIZE = 60


def erdos_szekeres_bound(k: int, q: int) -> int:
    """``binom(k + q - 2, q - 1)``, an upper bound on the Ramsey number R(k, q)."""
    if k < 1 or q < 1:
        raise ValueError(f"k and q must be positive, got k={k}, q={q}")
    return math.comb(k + q - 2, q - 1)


def k_of_n(n: int, q: int) -> float:
    """``((q-1)! n)^(1/(q-1)) - q``."""
    if n < 1 or q < 2:
        raise ValueError(f"need n >= 1 and q >= 2, got n={n}, q={q}")
    return (math.factorial(q - 1) * n) ** (1.0 / (q - 1)) - q


def pigeonhole_applies(n: int, q: int) -> bool:
    """True when ``n >= R(ceil(k(n)), q)`` is certified by the binomial bound.

    Then every graph on n vertices without a q-clique has
    ``alpha >= ceil(k(n))``.
    """
    need = math.ceil(k_of_n(n, q))
    if need < 1:
        return True
    return n >= erdos_szekeres_bound(need, q)


def greedy_mis_coloring(g: Graph) -> Coloring:
    """Color by repeatedly removing a maximum independent set (lexicographically smallest)."""
    colors = [0] * g.n
    remaining = g.vertices
    color = 0
    while remaining:
        color += 1
        h, labels = induced(g, remaining)
        _, mis = lex_min_max_clique(complement(h))
        chosen = lift(mis, labels)
        for v in bits(chosen):
            colors[v] = color
        remaining &= ~chosen
    return Coloring(tuple(colors))


# --------------------------------------------------------------------------
# sample families with small clique number


def random_bipartite(n: int, rng: random.Random, p: float = 0.5) -> Graph:
    left = n // 2
    edges = [(a, b) for a in range(left) for b in range(left, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def random_triangle_free(n: int, rng: random.Random) -> Graph:
    """Random triangle-free process: scan shuffled pairs, keep an edge unless it closes a triangle."""
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    rng.shuffle(pairs)
    adj = [0] * n
    for a, b in pairs:
        if not adj[a] & adj[b]:
            adj[a] |= 1 << b
            adj[b] |= 1 << a
    return Graph.from_edges(n, [(a, b) for a in range(n) for b in bits(adj[a]) if a < b])


def odd_cycle_family(n: int, rng: random.Random) -> Graph:
    """``C_n`` for odd n, ``C_{n-1}`` plus an isolated vertex for even n."""
    if n % 2:
        return cycle(n)
    return disjoint_union(cycle(n - 1), Graph.from_edges(1, []))


def mycielskian(g: Graph) -> Graph:
    n = g.n
    edges = list(g.edges())
    for u, v in g.edges():
        edges += [(u, n + v), (v, n + u)]
    edges += [(n + v, 2 * n) for v in range(n)]
    return Graph.from_edges(2 * n + 1, edges)


def mycielski_family(n: int, rng: random.Random) -> Graph:
    """Largest iterated Mycielskian of ``K_2`` that fits, padded with a disjoint path."""
    g = Graph.from_edges(2, [(0, 1)])
    while 2 * g.n + 1 <= n:
        g = mycielskian(g)
    if g.n < n:
        g = disjoint_union(g, path(n - g.n))
    return g


FAMILIES: dict[str, Callable[[int, random.Random], Graph]] = {
    "bipartite": random_bipartite,
    "triangle-free": random_triangle_free,
    "cycle": odd_cycle_family,
    "mycielski-ish": mycielski_family,
}


# --------------------------------------------------------------------------
# scaling


@dataclass(frozen=True)
class Sample:
    n: int
    colors_used: int
    omega: int
    proper: bool
    alpha: int
    k_bound: float
    pigeonhole_checked: bool


@dataclass(frozen=True)
class ScalingReport:
    q: int
    family: str
    samples: tuple[Sample, ...]
    fitted_exponent: float
    reference_exponent: float

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "family": self.family,
            "samples": [[s.n, s.colors_used] for s in self.samples],
            "alpha": [s.alpha for s in self.samples],
            "fitted_exponent": self.fitted_exponent,
            "reference_exponent": self.reference_exponent,
            "verified": self.verified,
        }

    @property
    def verified(self) -> bool:
        """Every sample had omega < q, a proper coloring, and passed the alpha check where it applies."""
        return all(
            s.omega < self.q and s.proper and (not s.pigeonhole_checked or s.alpha >= math.ceil(s.k_bound))
            for s in self.samples
        )


def _sample(args: tuple) -> Sample:
    family, n, q, seed = args
    g = FAMILIES[family](n, random.Random(seed))
    omega, _ = clique_number(g)
    if omega >= q:
        raise ContractViolation(f"{family} sample on {n} vertices has omega={omega} >= q={q}")
    coloring = greedy_mis_coloring(g)
    alpha, _ = independence_number(g)
    k = k_of_n(n, q)
    checked = pigeonhole_applies(n, q)
    if checked and alpha < math.ceil(k):
        raise ContractViolation(f"alpha={alpha} < ceil(k(n))={math.ceil(k)} at n={n}")
    return Sample(n, coloring.num_colors, omega, coloring.is_proper(g), alpha, k, checked)


def fit_exponent(ns: list[int], counts: list[int]) -> float:
    if len(set(ns)) < 2:
        raise ValueError("need at least two distinct sizes to fit an exponent")
    slope, _ = np.polyfit(np.log(ns), np.log(counts), 1)
    return float(slope)


def scaling_check(
    q: int, family: str, sizes: list[int], *, seed: int = 0, repeats: int = 1, jobs: int = 1
) -> ScalingReport:
    """Colors used by :func:`greedy_mis_coloring` across ``sizes``, and the fitted exponent.

    With ``repeats > 1`` each size is sampled several times and the largest
    count is kept.
    """
    if q < 2:
        raise ValueError(f"q must be at least 2, got {q}")
    if family not in FAMILIES:
        raise ContractViolation(f"unknown family {family!r}; choose from {sorted(FAMILIES)}")
    sizes = sorted(sizes)
    if any(n < 1 or n > MAX_SIZE for n in sizes):
        raise ContractViolation(f"sizes must lie in 1..{MAX_SIZE}")
    if len(set(sizes)) < 2:
        raise ValueError("need at least two distinct sizes to fit an exponent")
    jobs_args = [(family, n, q, seed * 1_000_003 + n * 101 + r) for n in sizes for r in range(repeats)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sample, jobs_args))
    else:
        results = [_sample(a) for a in jobs_args]
    worst: dict[int, Sample] = {}
    for s in results:
        if s.n not in worst or s.colors_used > worst[s.n].colors_used:
            worst[s.n] = s
    samples = tuple(worst[n] for n in sorted(worst))
    exponent = fit_exponent([s.n for s in samples], [s.colors_used for s in samples])
    return ScalingReport(q, family, samples, exponent, (q - 2) / (q - 1))
