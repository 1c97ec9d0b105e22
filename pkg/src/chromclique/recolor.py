"""Constructive lower bounds on the clique number of graphs with chi close to n.

Given a graph ``g`` on ``n`` vertices and any proper coloring with ``n - k``
colors, the engine returns one of two checkable objects:

* a :class:`CliqueWitness` of the guaranteed size (``n - 2k + 2`` for
  ``k`` in 3..4, ``n - 2k + 3`` for ``k`` in 5..6), or
* an :class:`ImprovedColoring` that uses strictly fewer colors, proving the
  input coloring was not optimal.

Both are re-validated against ``g`` before they are returned.

Notation follows the structure of a coloring: ``Q`` is the set of singleton
classes (a clique unless two singletons can merge), ``S`` holds one vertex
per larger class that is adjacent to all of ``Q``, and in the two-element
classes ``{u_i, v_i}`` the vertex ``v_i`` is the one in ``S``. ``L_i`` is the
set of ``Q``-colors whose ``Q``-vertex is not adjacent to ``u_i``: the colors
``u_i`` could move to.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Union

from .errors import ContractViolation, TheoremFalsified
from .graph import Graph, bits, induced, lift, mask_of, to_graph6
from .matching import BipartiteListGraph, Side, hall_violator, max_matching
from .solvers import (
    Coloring,
    ListAssignment,
    RamseyKind,
    chromatic_number,
    clique_number,
    list_colorable,
    ramsey33_witness,
)

# --------------------------------------------------------------------------
# outcomes


@dataclass(frozen=True)
class CliqueWitness:
    vertices: int
    route: str = ""

    @property
    def size(self) -> int:
        return self.vertices.bit_count()


@dataclass(frozen=True)
class ImprovedColoring:
    coloring: Coloring
    route: str = ""


WitnessOutcome = Union[CliqueWitness, ImprovedColoring]


def outcome_is_valid(g: Graph, coloring: Coloring, outcome: WitnessOutcome) -> bool:
    if isinstance(outcome, CliqueWitness):
        return g.is_clique(outcome.vertices)
    return outcome.coloring.is_proper(g) and outcome.coloring.num_colors < coloring.num_colors


def outcome_to_json(outcome: WitnessOutcome, g: Graph, coloring: Coloring) -> dict:
    verified = outcome_is_valid(g, coloring, outcome)
    if isinstance(outcome, CliqueWitness):
        return {
            "outcome": "clique",
            "vertices": list(bits(outcome.vertices)),
            "size": outcome.size,
            "route": outcome.route,
            "verified": verified,
        }
    return {
        "outcome": "recoloring",
        "colors": list(outcome.coloring.colors),
        "num_colors": outcome.coloring.num_colors,
        "route": outcome.route,
        "verified": verified,
    }


def _reproducer(g: Graph, coloring: Coloring, k: int) -> dict:
    return {"graph6": to_graph6(g), "colors": list(coloring.colors), "k": k}


def _checked(g: Graph, coloring: Coloring, k: int, outcome: WitnessOutcome) -> WitnessOutcome:
    if not outcome_is_valid(g, coloring, outcome):
        raise TheoremFalsified(f"engine produced an invalid {type(outcome).__name__}", _reproducer(g, coloring, k))
    return outcome


# --------------------------------------------------------------------------
# structure of a coloring


@dataclass(frozen=True)
class ColoringStructure:
    g: Graph
    coloring: Coloring
    k: int
    q_set: int
    doubletons: tuple[tuple[int, int], ...]  # (u_i, v_i) with v_i in S
    triple_class: int | None
    s_set: int
    u_set: int
    lists: ListAssignment  # lists.lists[i] = L_i, aligned with doubletons
    l_union: frozenset[int]
    q_vertex: dict[int, int] = field(default_factory=dict)  # Q-color -> its vertex

    @property
    def n(self) -> int:
        return self.g.n

    @property
    def u(self) -> tuple[int, ...]:
        return tuple(u for u, _ in self.doubletons)

    @property
    def v(self) -> tuple[int, ...]:
        return tuple(v for _, v in self.doubletons)


def _validate(g: Graph, coloring: Coloring, k: int) -> Coloring:
    if len(coloring.colors) != g.n:
        raise ContractViolation("coloring does not cover every vertex")
    if not coloring.is_proper(g):
        raise ContractViolation("coloring is not proper")
    if k < 1:
        raise ContractViolation(f"k must be at least 1, got {k}")
    if coloring.num_colors != g.n - k:
        raise ContractViolation(f"coloring uses {coloring.num_colors} colors, expected n - k = {g.n - k}")
    return coloring.canonical()


def _merge_singletons(g: Graph, coloring: Coloring, q: int) -> ImprovedColoring | None:
    members = list(bits(q))
    for i, a in enumerate(members):
        for b in members[i + 1 :]:
            if not g.has_edge(a, b):
                colors = list(coloring.colors)
                colors[b] = colors[a]
                return ImprovedColoring(Coloring(tuple(colors)).canonical(), "merge two singletons")
    return None


def _dissolve_class(g: Graph, coloring: Coloring, q: int, cls: int) -> ImprovedColoring:
    # Every vertex of cls has a non-neighbour in Q; move it into that singleton class.
    colors = list(coloring.colors)
    for x in bits(cls):
        target = next(bits(q & ~g.adj[x]))
        colors[x] = coloring.colors[target]
    return ImprovedColoring(Coloring(tuple(colors)).canonical(), "class without a Q-universal vertex")


def _cycle_order(g: Graph, pairs: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Rotate doubletons so that v_1..v_5 walk around the 5-cycle induced by S."""
    by_v = {v: (u, v) for u, v in pairs}
    s = mask_of(by_v)
    start = min(by_v)
    order = [start]
    prev = None
    cur = start
    while len(order) < len(by_v):
        nbrs = [w for w in bits(g.adj[cur] & s) if w != prev and w not in order]
        prev, cur = cur, min(nbrs)
        order.append(cur)
    return [by_v[v] for v in order]


def _is_c5(g: Graph, s: int) -> bool:
    return s.bit_count() == 5 and all((g.adj[v] & s).bit_count() == 2 for v in bits(s)) and _connected(g, s)


def _connected(g: Graph, s: int) -> bool:
    if not s:
        return True
    seen = s & -s
    frontier = seen
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj[v] & s
        frontier = nxt & ~seen
        seen |= nxt
    return seen == s


def extract_structure(
    g: Graph, coloring: Coloring, k: int, *, target: int | None = None
) -> ColoringStructure | WitnessOutcome:
    """Classify the color classes of an ``(n-k)``-coloring.

    Returns early with an outcome when the coloring already yields one: two
    non-adjacent singletons (merge them), a class with no ``Q``-universal
    vertex (dissolve it into ``Q``), or at least ``target - 1`` singletons
    (``Q`` plus one ``Q``-universal vertex is a clique of size ``target``).
    ``target`` defaults to :func:`guaranteed_clique`.
    """
    coloring = _validate(g, coloring, k)
    if g.n - 2 * k < 1:
        raise ContractViolation(f"need n - 2k >= 1, got n={g.n}, k={k}")
    return _structure(g, coloring, k, guaranteed_clique(g.n, k) if target is None else target)


def guaranteed_clique(n: int, k: int) -> int:
    """Clique size forced by chi = n - k: n-1, n-3, n-2k+2 (k = 3, 4), n-2k+3 (k >= 5)."""
    if k <= 1:
        return n - k
    if k == 2:
        return n - 3
    if k <= 4:
        return n - 2 * k + 2
    return n - 2 * k + 3


def _structure(g: Graph, coloring: Coloring, k: int, target: int) -> ColoringStructure | WitnessOutcome:
    classes = coloring.classes()
    q = 0
    for cls in classes.values():
        if cls.bit_count() == 1:
            q |= cls
    merged = _merge_singletons(g, coloring, q)
    if merged is not None:
        return merged
    big = [(c, cls) for c, cls in classes.items() if cls.bit_count() > 1]
    universal: dict[int, int] = {}
    for c, cls in big:
        cands = [x for x in bits(cls) if q & ~g.adj[x] == 0]
        if not cands:
            return _dissolve_class(g, coloring, q, cls)
        universal[c] = cands[0]
    if q.bit_count() >= target - 1:
        return CliqueWitness(q | (1 << universal[big[0][0]]), "singletons plus a Q-universal vertex")
    pairs = []
    triple = None
    for c, cls in big:
        v = universal[c]
        if cls.bit_count() == 2:
            pairs.append((next(bits(cls & ~(1 << v))), v))
        elif cls.bit_count() == 3 and triple is None:
            triple = cls
        else:
            raise ContractViolation("class sizes are inconsistent with n - k colors")
    s = mask_of(universal.values())
    if triple is None and _is_c5(g, s):
        pairs = _cycle_order(g, pairs)
    q_vertex = {coloring.colors[x]: x for x in bits(q)}
    lists = ListAssignment.of(
        [coloring.colors[x] for x in bits(q & ~g.adj[u])] for u, _ in pairs
    )
    return ColoringStructure(
        g=g,
        coloring=coloring,
        k=k,
        q_set=q,
        doubletons=tuple(pairs),
        triple_class=triple,
        s_set=s,
        u_set=mask_of(u for u, _ in pairs),
        lists=lists,
        l_union=lists.universe,
        q_vertex=q_vertex,
    )


# --------------------------------------------------------------------------
# helpers shared by both bounds


def _first_edge(g: Graph, s: int) -> int | None:
    for v in bits(s):
        nb = g.adj[v] & s & ~((2 << v) - 1)
        if nb:
            return (1 << v) | (nb & -nb)
    return None


def _first_triangle(g: Graph, s: int) -> int | None:
    for a, b, c in itertools.combinations(bits(s), 3):
        t = mask_of((a, b, c))
        if g.is_clique(t):
            return t
    return None


def _first_independent_triple(g: Graph, s: int) -> int | None:
    for a, b, c in itertools.combinations(bits(s), 3):
        t = mask_of((a, b, c))
        if g.is_independent(t):
            return t
    return None


def _near_complete_step(g: Graph, coloring: Coloring, s: int) -> WitnessOutcome:
    """S is independent; the rest has n - k vertices. Find its (n-k-1)-clique or recolor.

    Two disjoint non-edges in the rest, or three pairwise non-adjacent
    vertices, give a coloring of the rest with n - k - 2 colors; adding S as
    one class beats the input. Otherwise all non-edges share a vertex and
    deleting it leaves a clique.
    """
    rest = g.vertices & ~s
    nonedges = [
        (a, b) for a, b in itertools.combinations(bits(rest), 2) if not g.has_edge(a, b)
    ]
    if not nonedges:
        return CliqueWitness(rest, "remove S: remainder is complete")

    def recolor(groups: list[int]) -> ImprovedColoring:
        covered = 0
        for grp in groups:
            covered |= grp
        classes = groups + [1 << v for v in bits(rest & ~covered)] + [s]
        return ImprovedColoring(Coloring.from_classes(g.n, classes), "remove S: remainder recolors")

    for (a, b), (c, d) in itertools.combinations(nonedges, 2):
        if len({a, b, c, d}) == 4:
            return recolor([mask_of((a, b)), mask_of((c, d))])
    common = set(nonedges[0])
    for e in nonedges[1:]:
        common &= set(e)
    if common:
        x = min(common)
        return CliqueWitness(rest & ~(1 << x), "remove S: delete the common non-neighbour")
    # pairwise intersecting with no common vertex: a triangle of non-edges
    return recolor([mask_of(set(itertools.chain(*nonedges)))])


def _reduce(g: Graph, coloring: Coloring, x: int, route: str, depth: int) -> WitnessOutcome:
    """Delete the independent set ``x`` and find a large clique in what remains.

    The remainder is colored exactly. If it needs fewer than ``colors - 1``
    colors, adding ``x`` as a class improves the input; otherwise the
    remainder's own deficiency drives a recursive call.
    """
    h, labels = induced(g, g.vertices & ~x)
    chi_h, col_h = chromatic_number(h)
    if chi_h + 1 < coloring.num_colors:
        colors = [0] * g.n
        for new, old in enumerate(labels):
            colors[old] = col_h.colors[new]
        for v in bits(x):
            colors[v] = chi_h + 1
        return ImprovedColoring(Coloring(tuple(colors)).canonical(), f"{route}; remainder recolors")
    k_h = h.n - chi_h
    sub: WitnessOutcome
    if k_h >= 5 and h.n - 2 * k_h >= 1:
        sub = _theorem(h, col_h, k_h, depth + 1)
    elif k_h >= 3 and h.n - 2 * k_h >= 1:
        sub = _proposition(h, col_h, k_h)
    else:
        sub = CliqueWitness(clique_number(h)[1], "exact clique")
    if isinstance(sub, ImprovedColoring):
        raise TheoremFalsified("an optimal coloring was improved", _reproducer(h, col_h, k_h))
    return CliqueWitness(lift(sub.vertices, labels), f"{route}; remainder k={k_h}: {sub.route}")


# --------------------------------------------------------------------------
# k in {3, 4}: clique of size n - 2k + 2


def proposition_witness(g: Graph, coloring: Coloring, k: int) -> WitnessOutcome:
    """Clique of size at least ``n - 2k + 2`` or a coloring with fewer colors (``k >= 3``)."""
    if k < 3:
        raise ContractViolation(f"proposition_witness needs k >= 3, got {k}")
    coloring = _validate(g, coloring, k)
    if g.n - 2 * k < 1:
        raise ContractViolation(f"need n - 2k >= 1, got n={g.n}, k={k}")
    out = _proposition(g, coloring, k)
    out = _checked(g, coloring, k, out)
    if isinstance(out, CliqueWitness) and out.size < g.n - 2 * k + 2:
        raise TheoremFalsified(f"clique of size {out.size} below n - 2k + 2", _reproducer(g, coloring, k))
    return out


def _proposition(g: Graph, coloring: Coloring, k: int) -> WitnessOutcome:
    st = _structure(g, coloring, k, g.n - 2 * k + 2)
    if not isinstance(st, ColoringStructure):
        return st
    edge = _first_edge(g, st.s_set)
    if edge is not None:
        return CliqueWitness(st.q_set | edge, "Q plus an edge of S")
    return _near_complete_step(g, st.coloring, st.s_set)


# --------------------------------------------------------------------------
# k in {5, 6}: clique of size n - 2k + 3


def theorem_witness(g: Graph, coloring: Coloring, k: int) -> WitnessOutcome:
    """Clique of size at least ``n - 2k + 3`` or a coloring with fewer colors (``k >= 5``).

    The bound is asserted for ``k <= 6``; for larger ``k`` the same recursion
    runs and whatever clique it reaches is returned unchecked against it.
    """
    if k < 5:
        raise ContractViolation(f"theorem_witness needs k >= 5, got {k}")
    coloring = _validate(g, coloring, k)
    if g.n - 2 * k < 1:
        raise ContractViolation(f"need n - 2k >= 1, got n={g.n}, k={k}")
    out = _checked(g, coloring, k, _theorem(g, coloring, k, 0))
    if k <= 6 and isinstance(out, CliqueWitness) and out.size < g.n - 2 * k + 3:
        raise TheoremFalsified(f"clique of size {out.size} below n - 2k + 3", _reproducer(g, coloring, k))
    return out


def _theorem(g: Graph, coloring: Coloring, k: int, depth: int) -> WitnessOutcome:
    st = _structure(g, coloring, k, g.n - 2 * k + 3)
    if not isinstance(st, ColoringStructure):
        return st
    if st.triple_class is not None:
        # k-2 doubletons and one 3-element class
        edge = _first_edge(g, st.s_set)
        if edge is not None:
            return CliqueWitness(st.q_set | edge, "Q plus an edge of S (3-element class)")
        return _reduce(g, st.coloring, st.s_set, "remove S (3-element class)", depth)
    tri = _first_triangle(g, st.s_set)
    if tri is not None:
        return CliqueWitness(st.q_set | tri, "Q plus a triangle of S")
    if k >= 6:
        w = ramsey33_witness(g, st.s_set)
        assert w.kind is RamseyKind.INDEPENDENT_TRIPLE
        return _reduce(g, st.coloring, w.vertices, "remove an independent triple of S", depth)
    indep = _first_independent_triple(g, st.s_set)
    if indep is not None:
        return _reduce(g, st.coloring, indep, "remove an independent triple of S", depth)
    return _five_cycle(st, depth)


def _five_cycle(st: ColoringStructure, depth: int) -> WitnessOutcome:
    g = st.g
    for (u, _), allowed in zip(st.doubletons, st.lists.lists):
        if not allowed:
            w = ramsey33_witness(g, st.s_set | (1 << u))
            if w.kind is RamseyKind.TRIANGLE:
                return CliqueWitness(st.q_set | w.vertices, "empty list: Q plus a triangle")
            return _reduce(g, st.coloring, w.vertices, "empty list: remove an independent triple", depth)
    t = st.s_set | st.u_set
    indep = _first_independent_triple(g, t)
    if indep is not None:
        return _reduce(g, st.coloring, indep, "remove an independent triple of T", depth)
    result = case_tree(st)
    _assert_agreement(st, result)
    if isinstance(result, TreeClique):
        return CliqueWitness(tree_clique_vertices(st, result), f"list coloring fails ({result.route})")
    return ImprovedColoring(apply_recoloring(st, t_coloring(st, result)), f"recolor T ({result.route})")


# --------------------------------------------------------------------------
# list coloring T = S + U without color 5

THREE = "3"
FOUR = "4"


@dataclass(frozen=True)
class TreeColoring:
    """Colors for u_1..u_5: ``THREE``, ``FOUR`` or a color from ``L``."""

    u_colors: tuple
    route: str


@dataclass(frozen=True)
class TreeClique:
    """u-indices (0-based) that are pairwise adjacent, and the Q-colors whose vertices must be dropped."""

    u_indices: tuple[int, ...]
    dropped: tuple[int, ...]
    route: str


def _check_c5_structure(st: ColoringStructure) -> None:
    if st.k != 5 or st.triple_class is not None or len(st.doubletons) != 5:
        raise ContractViolation("recoloring T needs a k = 5 structure with five doubletons")
    if not _is_c5(st.g, st.s_set):
        raise ContractViolation("S does not induce a 5-cycle")
    if any(not l for l in st.lists.lists):
        raise ContractViolation("every list L_i must be non-empty")


def case_tree(st: ColoringStructure) -> TreeColoring | TreeClique:
    """Color U from ``{3, 4} + L_i`` using 3 at most once, or exhibit the clique that blocks it.

    Assumes U's complement is triangle-free (checked), as it is whenever T has
    no independent triple.
    """
    _check_c5_structure(st)
    g = st.g
    us = st.u
    lists = [frozenset(l) for l in st.lists.lists]
    adj = [[g.has_edge(a, b) for b in us] for a in us]
    if _first_independent_triple(g, st.u_set) is not None:
        raise ContractViolation("the complement of U must be triangle-free")
    l = len(st.l_union)
    if l == 1:
        return _tree_l1(adj, lists)
    if l == 2:
        return _tree_l2(adj, lists, sorted(st.l_union))
    return _tree_l_ge3(adj, lists, sorted(st.l_union))


def _complete(assign: dict[int, object], route: str) -> TreeColoring:
    spare = iter((THREE, FOUR))
    out = []
    for i in range(5):
        out.append(assign[i] if i in assign else next(spare))
    return TreeColoring(tuple(out), route)


def _nonedge(adj, group) -> tuple[int, int] | None:
    for a, b in itertools.combinations(sorted(group), 2):
        if not adj[a][b]:
            return a, b
    return None


def _tree_l1(adj, lists) -> TreeColoring | TreeClique:
    (a,) = lists[0]
    pairs = [p for p in itertools.combinations(range(5), 2) if not adj[p[0]][p[1]]]
    for p1, p2 in itertools.combinations(pairs, 2):
        if not set(p1) & set(p2):
            return _complete({p1[0]: a, p1[1]: a, p2[0]: FOUR, p2[1]: FOUR}, "l=1: 2-matching in the complement of U")
    # complement of U is a star (possibly empty); drop its centre
    centre = 0
    for c in range(5):
        if all(c in p for p in pairs):
            centre = c
            break
    others = tuple(i for i in range(5) if i != centre)
    return TreeClique(others, (a,), "l=1: complement of U is a star")


def _tree_l2(adj, lists, colors) -> TreeColoring | TreeClique:
    a, b = colors
    A = [i for i in range(5) if lists[i] == {a}]
    B = [i for i in range(5) if lists[i] == {b}]
    M = [i for i in range(5) if lists[i] == {a, b}]

    def pair_then(pair, pair_color, want, route):
        rest = [i for i in range(5) if i not in pair]
        pick = next((i for i in rest if want in lists[i]), None)
        if pick is None:
            return None
        return _complete({pair[0]: pair_color, pair[1]: pair_color, pick: want}, route)

    for group, own, other, name in ((A, a, b, "A"), (B, b, a, "B")):
        p = _nonedge(adj, group)
        if p is not None:
            out = pair_then(p, own, other, f"l=2: {name} is not a clique")
            assert out is not None
            return out
    p = _nonedge(adj, M)
    if p is not None:
        out = pair_then(p, b, a, "l=2: M is not a clique") or pair_then(p, a, b, "l=2: M is not a clique")
        assert out is not None
        return out
    if _nonedge(adj, range(5)) is None:
        return TreeClique(tuple(range(5)), (a, b), "l=2: U is a clique")
    for group, single, own, other, name in ((A, A, a, b, "A+M"), (B, B, b, a, "B+M")):
        for i in single:
            for j in M:
                if adj[i][j]:
                    continue
                out = pair_then((min(i, j), max(i, j)), own, other, f"l=2: {name} is not a clique")
                if out is not None:
                    return out
                # every other list is {own}: the four own-list vertices
                four = [x for x in range(5) if x != j]
                q = _nonedge(adj, four)
                if q is None:
                    return TreeClique(tuple(four), (own,), f"l=2: {name} fails, four one-color lists")
                rest_pick = j
                return _complete({q[0]: own, q[1]: own, rest_pick: other}, f"l=2: {name} is not a clique")
    # the only non-edges run between A and B
    i, j = next((i, j) for i in A for j in B if not adj[i][j])
    rest = [x for x in range(5) if x not in (i, j)]
    union = frozenset().union(*(lists[x] for x in rest))
    if not {a, b} <= union:
        own = a if a in union else b
        four = [x for x in range(5) if lists[x] == {own}]
        return TreeClique(tuple(four), (own,), "l=2: four lists equal")
    for x in rest:
        for y in rest:
            if x != y and a in lists[x] and b in lists[y]:
                return _complete({i: FOUR, j: FOUR, x: a, y: b}, "l=2: A-B non-edge")
    raise AssertionError("unreachable: lists cannot be matched")  # pragma: no cover


def _tree_l_ge3(adj, lists, colors) -> TreeColoring | TreeClique:
    l = len(colors)
    b = BipartiteListGraph.from_lists({i: lists[i] for i in range(5)})

    def from_matching(pairs, route):
        return _complete({u: c for u, c in pairs[:3]}, route)

    centre_hint = None
    if l >= 4:
        subset = next(
            (lp for lp in itertools.combinations(colors, 3) if len(b.neighbourhood(lp, Side.RIGHT)) >= 3),
            None,
        )
        if subset is not None:
            block = hall_violator(b, Side.RIGHT, subset)
            if block is None:
                sub = BipartiteListGraph.from_lists({i: lists[i] & set(subset) for i in range(5)})
                return from_matching(max_matching(sub), "l>=4: matching covers L'")
            if block.shape == (2, 1):
                centre_hint = next(iter(block.neighbourhood))
            size = len(b.neighbourhood(subset, Side.RIGHT))
            m = max_matching(b)
            if len(m) >= 3:
                return from_matching(m, f"l>=4: 2-1 block, |N(L')|={size}, matching of size 3")
    else:
        block = hall_violator(b, Side.RIGHT, colors)
        if block is None:
            return from_matching(max_matching(b), "l=3: complete matching from the colors")
        if block.shape == (2, 1):
            centre_hint = next(iter(block.neighbourhood))
    m = max_matching(b)
    if len(m) >= 3:
        return from_matching(m, f"l={l}: matching of size 3")
    # No 3-matching: one vertex carries every color but one, the others all list {c}.
    candidates = ([centre_hint] if centre_hint is not None else []) + list(range(5))
    for centre in candidates:
        others = [i for i in range(5) if i != centre]
        if len({lists[i] for i in others}) == 1 and len(lists[others[0]]) == 1:
            (c,) = lists[others[0]]
            break
    else:  # pragma: no cover
        raise AssertionError("no 3-matching but lists do not form a star pattern")
    p = _nonedge(adj, others)
    if p is None:
        return TreeClique(tuple(others), (c,), f"l={l}: the four single-color vertices form a clique")
    spare = min(lists[centre] - {c})
    return _complete({p[0]: c, p[1]: c, centre: spare}, f"l={l}: star pattern with a non-edge")


def tree_clique_vertices(st: ColoringStructure, result: TreeClique) -> int:
    drop = mask_of(st.q_vertex[c] for c in result.dropped)
    return (st.q_set & ~drop) | mask_of(st.u[i] for i in result.u_indices)


def t_coloring(st: ColoringStructure, result: TreeColoring) -> dict[int, int]:
    """Colors of T's vertices as ids of the input coloring.

    The abstract colors 1..4 are the classes of the first four doubletons;
    the fifth doubleton's color disappears.
    """
    e = [st.coloring.colors[u] for u in st.u[:4]]
    three_at = next((i for i, c in enumerate(result.u_colors) if c == THREE), 0)
    out: dict[int, int] = {}
    for i, c in enumerate(result.u_colors):
        if c == THREE:
            out[st.u[i]] = e[2]
        elif c == FOUR:
            out[st.u[i]] = e[3]
        else:
            out[st.u[i]] = c
    vs = st.v
    out[vs[three_at]] = e[2]
    for step in range(1, 5):
        out[vs[(three_at + step) % 5]] = e[0] if step % 2 else e[1]
    return out


def apply_recoloring(st: ColoringStructure, t_colors: dict[int, int]) -> Coloring:
    colors = list(st.coloring.colors)
    for v, c in t_colors.items():
        colors[v] = c
    return Coloring(tuple(colors)).canonical()


def _restricted_oracle(st: ColoringStructure) -> tuple | None:
    """Exact check of the same problem: U from ``{3,4} + L_i`` with 3 used at most once."""
    u_graph, _ = induced(st.g, st.u_set)
    # induced() sorts by vertex id; map back to doubleton order
    order = sorted(range(5), key=lambda i: st.u[i])
    lists = [frozenset(l) for l in st.lists.lists]
    three, four = -3, -4  # list_colorable wants comparable ids
    for holder in [None, *range(5)]:
        per_vertex = []
        for i in order:
            extra = {four, three} if i == holder else {four}
            per_vertex.append(lists[i] | extra)
        found = list_colorable(u_graph, ListAssignment(tuple(per_vertex)))
        if found is not None:
            names = {three: THREE, four: FOUR}
            by_index = {order[pos]: names.get(c, c) for pos, c in enumerate(found)}
            return tuple(by_index[i] for i in range(5))
    return None


def _assert_agreement(st: ColoringStructure, result: TreeColoring | TreeClique) -> None:
    oracle = _restricted_oracle(st)
    if (oracle is not None) != isinstance(result, TreeColoring):
        raise TheoremFalsified(
            f"case tree ({result.route}) disagrees with the exact list-coloring oracle",
            _reproducer(st.g, st.coloring, st.k),
        )
    if isinstance(result, TreeColoring):
        t_colors = t_coloring(st, result)
        e_colors = {st.coloring.colors[u] for u in st.u[:4]}
        for idx, (u, v) in enumerate(st.doubletons):
            assert t_colors[v] in e_colors
            assert t_colors[u] in e_colors | st.lists.lists[idx]
        t = st.s_set | st.u_set
        for a in bits(t):
            for b in bits(st.g.adj[a] & t):
                assert t_colors[a] != t_colors[b]
    else:
        assert st.g.is_clique(tree_clique_vertices(st, result))


def recolor_t(st: ColoringStructure) -> Coloring | None:
    """Recolor T = S + U without the fifth doubleton's color, or None.

    The returned coloring is of the whole graph: Q keeps its colors and T
    uses the lists, so it has one color fewer than the input. Runs the case
    analysis and the exact list-coloring oracle and raises if they disagree.
    """
    result = case_tree(st)
    _assert_agreement(st, result)
    if isinstance(result, TreeClique):
        return None
    return apply_recoloring(st, t_coloring(st, result))


# --------------------------------------------------------------------------
# synthetic embeddings for exercising the case analysis


def synthetic_instance(
    u_edges: list[tuple[int, int]], lists: list[set[int]], extra_q: int = 0
) -> tuple[Graph, Coloring]:
    """Graph realising a k = 5 structure with prescribed U and lists.

    Vertices 0..4 are v_1..v_5 (a 5-cycle), 5..9 are u_1..u_5, and Q follows
    with one vertex per list color ``1..l`` plus ``extra_q`` more. v_i and u_i
    share color i; the Q-vertex for list color ``x`` has color ``5 + x``.
    Every u_i is adjacent to every v_j with j != i, which keeps T's complement
    triangle-free whenever U's is.
    """
    palette = sorted(set().union(*lists))
    if palette and palette != list(range(1, len(palette) + 1)):
        raise ValueError("list colors must be 1..l")
    qn = max(1, len(palette)) + extra_q
    n = 10 + qn
    edges = []
    for i in range(5):
        edges.append((i, (i + 1) % 5))
        for j in range(5):
            if i != j:
                edges.append((5 + i, j))
    edges += [(5 + a, 5 + b) for a, b in u_edges]
    q = list(range(10, n))
    edges += list(itertools.combinations(q, 2))
    for i in range(5):
        edges += [(i, x) for x in q]
        edges += [(5 + i, 10 + x - 1) for x in range(1, qn + 1) if x not in lists[i]]
    colors = [i + 1 for i in range(5)] + [i + 1 for i in range(5)] + [6 + j for j in range(qn)]
    g = Graph.from_edges(n, edges)
    coloring = Coloring(tuple(colors))
    return g, coloring
