"""Exact solvers on bitset graphs.

Every solver returns a certificate (a clique, an independent set, or a
coloring) that the caller can re-check with the graph alone.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import NotFoundError
from .graph import Graph, bits, complement, mask_of

# --------------------------------------------------------------------------
# certificate types


@dataclass(frozen=True)
class Coloring:
    """Vertex ``v`` gets color ``colors[v]`` (a positive integer).

    Solver outputs always use the contiguous ids ``1..num_colors``; colorings
    read from lists or files may not, see :meth:`canonical`.
    """

    colors: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(c < 1 for c in self.colors):
            raise ValueError("colors must be positive integers")

    @property
    def num_colors(self) -> int:
        return len(set(self.colors))

    def classes(self) -> dict[int, int]:
        """Color id -> vertex mask, in ascending color order."""
        out: dict[int, int] = {}
        for v, c in enumerate(self.colors):
            out[c] = out.get(c, 0) | (1 << v)
        return dict(sorted(out.items()))

    def is_proper(self, g: Graph) -> bool:
        if len(self.colors) != g.n:
            return False
        return all(g.is_independent(cls) for cls in self.classes().values())

    def is_canonical(self) -> bool:
        return set(self.colors) == set(range(1, self.num_colors + 1))

    def canonical(self) -> "Coloring":
        """Relabel colors to ``1..m`` in order of first appearance."""
        relabel: dict[int, int] = {}
        for c in self.colors:
            relabel.setdefault(c, len(relabel) + 1)
        return Coloring(tuple(relabel[c] for c in self.colors))

    @classmethod
    def from_classes(cls, n: int, classes: Iterable[int]) -> "Coloring":
        colors = [0] * n
        for idx, cls_mask in enumerate(classes, start=1):
            for v in bits(cls_mask):
                colors[v] = idx
        if 0 in colors:
            raise ValueError("color classes do not cover every vertex")
        return cls(tuple(colors))


@dataclass(frozen=True)
class ListAssignment:
    """Allowed colors per vertex."""

    lists: tuple[frozenset[int], ...]

    @classmethod
    def of(cls, lists: Iterable[Iterable[int]]) -> "ListAssignment":
        return cls(tuple(frozenset(l) for l in lists))

    @property
    def universe(self) -> frozenset[int]:
        return frozenset().union(*self.lists) if self.lists else frozenset()

    def respects(self, colors: Sequence[int]) -> bool:
        return len(colors) == len(self.lists) and all(
            c in allowed for c, allowed in zip(colors, self.lists)
        )


class RamseyKind(enum.Enum):
    TRIANGLE = "triangle"
    INDEPENDENT_TRIPLE = "independent-triple"


@dataclass(frozen=True)
class Ramsey33Witness:
    kind: RamseyKind
    vertices: int

    def is_valid(self, g: Graph) -> bool:
        if self.vertices.bit_count() != 3:
            return False
        if self.kind is RamseyKind.TRIANGLE:
            return g.is_clique(self.vertices)
        return g.is_independent(self.vertices)


# --------------------------------------------------------------------------
# maximum clique: branch and bound with a greedy-coloring bound


def _degree_order(g: Graph, p: int) -> list[int]:
    return sorted(bits(p), key=lambda v: (-(g.adj[v] & p).bit_count(), v))


def _relabel(g: Graph, order: Sequence[int]) -> list[int]:
    pos = {v: i for i, v in enumerate(order)}
    adj = []
    for v in order:
        nb = 0
        for w in bits(g.adj[v]):
            if w in pos:
                nb |= 1 << pos[w]
        adj.append(nb)
    return adj


def _color_sort(adj: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    # Greedy colour classes in label order; colour number bounds the clique size.
    verts: list[int] = []
    bounds: list[int] = []
    k = 0
    while p:
        k += 1
        q = p
        while q:
            low = q & -q
            v = low.bit_length() - 1
            p ^= low
            q &= ~adj[v] & ~low
            verts.append(v)
            bounds.append(k)
    return verts, bounds


class _CliqueSearch:
    def __init__(self, adj: Sequence[int], floor: int, stop_at: int | None):
        self.adj = adj
        self.best = 0
        self.best_size = floor
        self.stop_at = stop_at
        self.done = False

    def expand(self, r: int, rsize: int, p: int) -> None:
        verts, bounds = _color_sort(self.adj, p)
        adj = self.adj
        for idx in range(len(verts) - 1, -1, -1):
            if rsize + bounds[idx] <= self.best_size:
                return
            v = verts[idx]
            bit = 1 << v
            newp = p & adj[v]
            if newp:
                self.expand(r | bit, rsize + 1, newp)
                if self.done:
                    return
            elif rsize + 1 > self.best_size:
                self.best_size = rsize + 1
                self.best = r | bit
                if self.stop_at is not None and self.best_size >= self.stop_at:
                    self.done = True
                    return
            p &= ~bit


def _clique_search(g: Graph, p: int, floor: int = 0, stop_at: int | None = None) -> tuple[int, int]:
    """Largest clique inside ``p`` with more than ``floor`` vertices, as (size, mask).

    Returns ``(floor, 0)`` when none exists. With ``stop_at`` the search ends at
    the first clique of that size.
    """
    if not p:
        return floor, 0
    order = _degree_order(g, p)
    adj = _relabel(g, order)
    search = _CliqueSearch(adj, floor, stop_at)
    search.expand(0, 0, (1 << len(order)) - 1)
    if not search.best:
        return floor, 0
    return search.best_size, mask_of(order[i] for i in bits(search.best))


def clique_number(g: Graph) -> tuple[int, int]:
    """``(omega(g), clique mask)``."""
    if g.n == 0:
        return 0, 0
    return _clique_search(g, g.vertices)


def find_clique(g: Graph, size: int, within: int | None = None) -> int | None:
    """Some clique of exactly ``size`` vertices inside ``within``, or None."""
    p = g.vertices if within is None else within
    if size <= 0:
        return 0
    got, mask = _clique_search(g, p, floor=size - 1, stop_at=size)
    if not mask:
        return None
    # stop_at may overshoot only if a larger clique was found first; trim it.
    return mask_of(list(bits(mask))[:size])


def lex_min_max_clique(g: Graph) -> tuple[int, int]:
    """A maximum clique whose sorted vertex tuple is lexicographically smallest."""
    omega, _ = clique_number(g)
    chosen = 0
    cand = g.vertices
    for _ in range(omega):
        need = omega - chosen.bit_count()
        for v in bits(cand):
            rest = cand & g.adj[v] & ~((2 << v) - 1)
            if need == 1 or find_clique(g, need - 1, rest) is not None:
                chosen |= 1 << v
                cand = rest
                break
    return omega, chosen


def independence_number(g: Graph) -> tuple[int, int]:
    """``(alpha(g), independent mask)`` via the clique solver on the complement."""
    return clique_number(complement(g))


# --------------------------------------------------------------------------
# coloring


def greedy_coloring(g: Graph) -> list[int]:
    """DSATUR with lowest-index tie-breaking; colours are 0-based."""
    n = g.n
    colors = [-1] * n
    seen = [0] * n
    uncolored = g.vertices
    while uncolored:
        best_v, best_key = -1, None
        for v in bits(uncolored):
            key = (seen[v].bit_count(), (g.adj[v] & uncolored).bit_count())
            if best_key is None or key > best_key:
                best_v, best_key = v, key
        free = ~seen[best_v]
        c = (free & -free).bit_length() - 1
        colors[best_v] = c
        uncolored &= ~(1 << best_v)
        for w in bits(g.adj[best_v] & uncolored):
            seen[w] |= 1 << c
    return colors


def _greedy_clique(g: Graph) -> int:
    clique = 0
    cand = g.vertices
    adj = g.adj
    while cand:
        best_v, best_d = -1, -1
        m = cand
        while m:
            low = m & -m
            m ^= low
            u = low.bit_length() - 1
            d = (adj[u] & cand).bit_count()
            if d > best_d:
                best_v, best_d = u, d
        clique |= 1 << best_v
        cand &= adj[best_v]
    return clique


class _KColor:
    """Complete backtracking for a proper k-coloring, with forward checking."""

    def __init__(self, adj: Sequence[int], n: int, k: int):
        self.adj = adj
        self.n = n
        self.k = k
        self.colors = [-1] * n
        self.dom = [(1 << k) - 1] * n
        self.deg = [a.bit_count() for a in adj]

    def assign(self, v: int, c: int, uncolored: int) -> list[int] | None:
        """Colour v with c and prune neighbours; None (and no change) on a wipe-out."""
        self.colors[v] = c
        bit = 1 << c
        changed = []
        dom = self.dom
        m = self.adj[v] & uncolored
        while m:
            low = m & -m
            m ^= low
            w = low.bit_length() - 1
            if dom[w] & bit:
                dom[w] ^= bit
                changed.append(w)
                if not dom[w]:
                    for x in changed:
                        dom[x] |= bit
                    self.colors[v] = -1
                    return None
        return changed

    def search(self, uncolored: int, used: int) -> bool:
        if not uncolored:
            return True
        allowed = (1 << min(self.k, used + 1)) - 1
        dom = self.dom
        deg = self.deg
        best_v = -1
        best_size = 99
        best_deg = -1
        m = uncolored
        while m:
            low = m & -m
            m ^= low
            v = low.bit_length() - 1
            size = (dom[v] & allowed).bit_count()
            if size < best_size or (size == best_size and deg[v] > best_deg):
                if size == 0:
                    return False
                best_v, best_size, best_deg = v, size, deg[v]
        v = best_v
        rest = uncolored & ~(1 << v)
        choices = dom[v] & allowed
        while choices:
            low = choices & -choices
            choices ^= low
            c = low.bit_length() - 1
            changed = self.assign(v, c, rest)
            if changed is None:
                continue
            if self.search(rest, used if c < used else c + 1):
                return True
            for w in changed:
                dom[w] |= low
            self.colors[v] = -1
        return False


def _k_colorable(g: Graph, k: int, clique: int) -> list[int] | None:
    if g.n == 0:
        return []
    if k <= 0 or clique.bit_count() > k:
        return None
    solver = _KColor(g.adj, g.n, k)
    uncolored = g.vertices
    # Any k-coloring can be permuted so the clique gets colours 0..|clique|-1.
    for c, v in enumerate(bits(clique)):
        uncolored &= ~(1 << v)
        if solver.assign(v, c, uncolored) is None:
            return None
    if solver.search(uncolored, clique.bit_count()):
        return list(solver.colors)
    return None


def k_colorable(g: Graph, k: int) -> Coloring | None:
    """A proper coloring with at most ``k`` colors, or None if none exists."""
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    colors = _k_colorable(g, k, _greedy_clique(g) if g.n else 0)
    if colors is None:
        return None
    return Coloring(tuple(c + 1 for c in colors)).canonical()


def chromatic_number(g: Graph) -> tuple[int, Coloring]:
    """``(chi(g), optimal coloring)`` by iterative deepening from the clique number."""
    if g.n == 0:
        return 0, Coloring(())
    omega, clique = clique_number(g)
    greedy = greedy_coloring(g)
    upper = max(greedy) + 1
    for k in range(omega, upper):
        colors = _k_colorable(g, k, clique)
        if colors is not None:
            return k, Coloring(tuple(c + 1 for c in colors)).canonical()
    return upper, Coloring(tuple(c + 1 for c in greedy)).canonical()


def chromatic_number_within(g: Graph, lo: int, hi: int) -> int:
    """``chi(g)`` given the promise ``lo <= chi(g) <= hi``; avoids redundant work."""
    clique = _greedy_clique(g)
    for k in range(max(lo, clique.bit_count()), hi):
        if _k_colorable(g, k, clique) is not None:
            return k
    return hi


def list_colorable(g: Graph, lists: ListAssignment) -> tuple[int, ...] | None:
    """A proper coloring with ``colors[v] in lists[v]`` for all v, or None."""
    if len(lists.lists) != g.n:
        raise ValueError("list assignment does not cover every vertex")
    universe = sorted(lists.universe)
    index = {c: i for i, c in enumerate(universe)}
    dom = [mask_of(index[c] for c in l) for l in lists.lists]
    if any(d == 0 for d in dom):
        return None
    colors = [-1] * g.n

    def search(uncolored: int) -> bool:
        if not uncolored:
            return True
        v = min(bits(uncolored), key=lambda u: (dom[u].bit_count(), -g.degree(u), u))
        rest = uncolored & ~(1 << v)
        for c in bits(dom[v]):
            bit = 1 << c
            changed = []
            ok = True
            for w in bits(g.adj[v] & rest):
                if dom[w] & bit:
                    dom[w] ^= bit
                    changed.append(w)
                    if not dom[w]:
                        ok = False
                        break
            colors[v] = c
            if ok and search(rest):
                return True
            for w in changed:
                dom[w] |= bit
            colors[v] = -1
        return False

    if not search(g.vertices):
        return None
    return tuple(universe[c] for c in colors)


# --------------------------------------------------------------------------
# R(3,3) = 6


def ramsey33_witness(g: Graph, s: int) -> Ramsey33Witness:
    """A triangle or an independent triple inside the vertex set ``s``.

    With six or more vertices one always exists: take the lowest vertex ``x``
    of the first six; three of the other five are all neighbours or all
    non-neighbours of ``x``, and either those three close a triangle/triple
    with ``x`` or among themselves.
    """
    members = list(bits(s))
    if len(members) >= 6:
        x, others = members[0], members[1:6]
        nbrs = [w for w in others if g.has_edge(x, w)]
        non = [w for w in others if not g.has_edge(x, w)]
        trio, adjacent = (nbrs[:3], True) if len(nbrs) >= 3 else (non[:3], False)
        for i in range(3):
            for j in range(i + 1, 3):
                a, b = trio[i], trio[j]
                if g.has_edge(a, b) == adjacent:
                    kind = RamseyKind.TRIANGLE if adjacent else RamseyKind.INDEPENDENT_TRIPLE
                    return Ramsey33Witness(kind, mask_of((x, a, b)))
        kind = RamseyKind.INDEPENDENT_TRIPLE if adjacent else RamseyKind.TRIANGLE
        return Ramsey33Witness(kind, mask_of(trio))
    for i, a in enumerate(members):
        for j in range(i + 1, len(members)):
            b = members[j]
            for c in members[j + 1 :]:
                t = mask_of((a, b, c))
                if g.is_clique(t):
                    return Ramsey33Witness(RamseyKind.TRIANGLE, t)
                if g.is_independent(t):
                    return Ramsey33Witness(RamseyKind.INDEPENDENT_TRIPLE, t)
    raise NotFoundError(f"no triangle or independent triple among {len(members)} vertices")


def coloring_from_mapping(n: int, mapping: Mapping[int, int]) -> Coloring:
    return Coloring(tuple(mapping[v] for v in range(n)))
