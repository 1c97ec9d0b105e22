"""Bipartite matching between vertices and the colors on their lists.

The left side holds vertex ids, the right side color ids; a vertex is joined
to every color on its list. Besides maximum matchings this module extracts
Hall blocks: sets ``X`` on one side with ``|N(X)| < |X|``, which certify
that no matching saturates ``X``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class BipartiteListGraph:
    left: tuple[Hashable, ...]
    right: tuple[Hashable, ...]
    edges: Mapping[Hashable, frozenset]

    @classmethod
    def from_lists(cls, lists: Mapping[Hashable, Iterable[Hashable]]) -> "BipartiteListGraph":
        """Left side = keys of ``lists`` in the given order, right side = union of the lists, sorted."""
        edges = {u: frozenset(cs) for u, cs in lists.items()}
        right = sorted(frozenset().union(*edges.values()) if edges else frozenset())
        return cls(tuple(edges), tuple(right), edges)

    def neighbours(self, x: Hashable, side: Side) -> list:
        if side is Side.LEFT:
            return [c for c in self.right if c in self.edges[x]]
        return [u for u in self.left if x in self.edges[u]]

    def neighbourhood(self, xs: Iterable[Hashable], side: Side) -> frozenset:
        out: set = set()
        for x in xs:
            out.update(self.neighbours(x, side))
        return frozenset(out)


@dataclass(frozen=True)
class HallBlock:
    side: Side
    block: frozenset
    neighbourhood: frozenset

    @property
    def shape(self) -> tuple[int, int]:
        """``(i, j)`` for an "i-j" block."""
        return len(self.block), len(self.neighbourhood)


def _opposite(side: Side) -> Side:
    return Side.RIGHT if side is Side.LEFT else Side.LEFT


def _augment(b: BipartiteListGraph, side: Side, sources: Iterable[Hashable]) -> dict:
    """Kuhn's algorithm from ``sources`` on ``side``; returns the partner map of the other side."""
    partner: dict = {}

    def try_match(x: Hashable, seen: set) -> bool:
        for y in b.neighbours(x, side):
            if y in seen:
                continue
            seen.add(y)
            if y not in partner or try_match(partner[y], seen):
                partner[y] = x
                return True
        return False

    for x in sources:
        try_match(x, set())
    return partner


def max_matching(b: BipartiteListGraph) -> list[tuple[Hashable, Hashable]]:
    """Maximum matching as ``(left, right)`` pairs, sorted by left order."""
    partner = _augment(b, Side.LEFT, b.left)
    order = {u: i for i, u in enumerate(b.left)}
    return sorted(((u, c) for c, u in partner.items()), key=lambda e: order[e[0]])


def hall_violator(b: BipartiteListGraph, side: Side, required: Iterable[Hashable]) -> HallBlock | None:
    """A block ``X`` within ``required`` with ``|N(X)| < |X|``, or None if ``required`` can be saturated.

    A maximum matching from ``required`` leaves some ``x`` unmatched; the
    ``required`` vertices reachable from ``x`` by alternating paths, together
    with the other-side vertices they reach, give ``|N(X)| = |X| - 1``.
    """
    pool = [x for x in (b.left if side is Side.LEFT else b.right) if x in set(required)]
    partner = _augment(b, side, pool)
    matched = set(partner.values())
    free = [x for x in pool if x not in matched]
    if not free:
        return None
    block = {free[0]}
    frontier = [free[0]]
    reached: set = set()
    while frontier:
        x = frontier.pop()
        for y in b.neighbours(x, side):
            if y in reached:
                continue
            reached.add(y)
            z = partner[y]  # y is matched, or the matching would not be maximum
            if z not in block:
                block.add(z)
                frontier.append(z)
    found = HallBlock(side, frozenset(block), b.neighbourhood(block, side))
    assert len(found.neighbourhood) < len(found.block)
    return found


def is_matching(b: BipartiteListGraph, pairs: Iterable[tuple[Hashable, Hashable]]) -> bool:
    pairs = list(pairs)
    lefts = [u for u, _ in pairs]
    rights = [c for _, c in pairs]
    return (
        len(set(lefts)) == len(lefts)
        and len(set(rights)) == len(rights)
        and all(c in b.edges[u] for u, c in pairs)
    )


__all__ = [
    "BipartiteListGraph",
    "HallBlock",
    "Side",
    "hall_violator",
    "is_matching",
    "max_matching",
]
