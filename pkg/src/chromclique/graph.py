"""Bitset graphs on at most 64 vertices, the standard families, and graph6 I/O.

A vertex set is a plain ``int`` bitmask: bit ``v`` set means vertex ``v`` is
in the set. ``adj[v]`` is the neighbourhood of ``v`` as such a mask.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import CapacityError, Graph6Error

MAX_VERTICES = 64


def bits(mask: int) -> Iterator[int]:
    """Yield the members of a vertex set in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def popcount(mask: int) -> int:
    return mask.bit_count()


def _check_capacity(n: int) -> None:
    if n < 0:
        raise ValueError(f"vertex count must be non-negative, got {n}")
    if n > MAX_VERTICES:
        raise CapacityError(f"{n} vertices exceeds the {MAX_VERTICES}-vertex cap")


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with vertex set ``0..n-1``."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_capacity(self.n)
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match vertex count")
        full = (1 << self.n) - 1
        for v, nb in enumerate(self.adj):
            if nb & ~full:
                raise ValueError(f"vertex {v} has neighbours outside 0..{self.n - 1}")
            if nb >> v & 1:
                raise ValueError(f"vertex {v} has a loop")
            for w in bits(nb):
                if not self.adj[w] >> v & 1:
                    raise ValueError(f"edge {v}-{w} is not symmetric")

    @classmethod
    def _trusted(cls, n: int, adj: Sequence[int]) -> "Graph":
        # Skips validation; callers guarantee symmetry and irreflexivity.
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", tuple(adj))
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        _check_capacity(n)
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls._trusted(n, adj)

    @classmethod
    def from_edge_mask(cls, n: int, mask: int) -> "Graph":
        """Inverse of :meth:`edge_mask`."""
        _check_capacity(n)
        adj = [0] * n
        offset = 0
        for j in range(1, n):
            low = (mask >> offset) & ((1 << j) - 1)
            adj[j] = low
            for i in bits(low):
                adj[i] |= 1 << j
            offset += j
        return cls._trusted(n, adj)

    @property
    def vertices(self) -> int:
        """The full vertex set as a mask."""
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def num_edges(self) -> int:
        return sum(nb.bit_count() for nb in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for j in range(self.n) for i in bits(self.adj[j] & ((1 << j) - 1))]

    def edge_mask(self) -> int:
        """Edges packed as an integer, edge ``(i, j)`` with ``i < j`` at bit ``j(j-1)/2 + i``.

        This is the graph6 bit order, so ascending masks enumerate graphs in
        the same order as their upper-triangle bit strings read backwards.
        """
        mask = 0
        offset = 0
        for j in range(1, self.n):
            mask |= (self.adj[j] & ((1 << j) - 1)) << offset
            offset += j
        return mask

    def is_clique(self, s: int) -> bool:
        for v in bits(s):
            if (s & ~(1 << v)) & ~self.adj[v]:
                return False
        return True

    def is_independent(self, s: int) -> bool:
        return all(not (self.adj[v] & s) for v in bits(s))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges()}, g6={to_graph6(self)!r})"


def edgeless(n: int) -> Graph:
    _check_capacity(n)
    return Graph._trusted(n, [0] * n)


def complete(n: int) -> Graph:
    _check_capacity(n)
    full = (1 << n) - 1
    return Graph._trusted(n, [full & ~(1 << v) for v in range(n)])


def cycle(m: int) -> Graph:
    if m < 3:
        raise ValueError(f"a cycle needs at least 3 vertices, got {m}")
    return Graph.from_edges(m, [(i, (i + 1) % m) for i in range(m)])


def path(m: int) -> Graph:
    if m < 1:
        raise ValueError(f"a path needs at least 1 vertex, got {m}")
    return Graph.from_edges(m, [(i, i + 1) for i in range(m - 1)])


def disjoint_union(g: Graph, h: Graph) -> Graph:
    """``g`` keeps its labels; ``h``'s vertices are shifted up by ``g.n``."""
    _check_capacity(g.n + h.n)
    return Graph._trusted(g.n + h.n, list(g.adj) + [nb << g.n for nb in h.adj])


def complement(g: Graph) -> Graph:
    full = g.vertices
    return Graph._trusted(g.n, [full & ~nb & ~(1 << v) for v, nb in enumerate(g.adj)])


def induced(g: Graph, s: int) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph induced by ``s``, relabelled ``0..|s|-1`` in ascending order.

    Returns the subgraph and ``labels`` with ``labels[new] == old``.
    """
    if s & ~g.vertices:
        raise ValueError("vertex set is not a subset of the graph's vertices")
    labels = tuple(bits(s))
    pos = {old: new for new, old in enumerate(labels)}
    adj = []
    for old in labels:
        nb = 0
        for w in bits(g.adj[old] & s):
            nb |= 1 << pos[w]
        adj.append(nb)
    return Graph._trusted(len(labels), adj), labels


def lift(s: int, labels: Sequence[int]) -> int:
    """Translate a vertex set of an induced subgraph back to parent labels."""
    return mask_of(labels[v] for v in bits(s))


def add_dominating_vertex(g: Graph) -> Graph:
    _check_capacity(g.n + 1)
    new = 1 << g.n
    return Graph._trusted(g.n + 1, [nb | new for nb in g.adj] + [g.vertices])


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint union plus every edge between the two parts."""
    return complement(disjoint_union(complement(g), complement(h)))


# --- graph6 ---------------------------------------------------------------


def _encode_size(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))


def to_graph6(g: Graph) -> str:
    """Header-less graph6 encoding (McKay's format, bit-exact)."""
    out = [_encode_size(g.n)]
    acc = 0
    nbits = 0
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            acc = (acc << 1) | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = 0
                nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def from_graph6(text: str) -> Graph:
    s = text.strip()
    data = s.encode("ascii", errors="replace")
    for pos, byte in enumerate(data):
        if not 63 <= byte <= 126:
            raise Graph6Error(f"invalid graph6 character {chr(byte)!r}", pos)
    if not data:
        raise Graph6Error("empty graph6 string", 0)
    if data[0] == 126:
        if len(data) < 4:
            raise Graph6Error("truncated size field", len(data))
        if data[1] == 126:
            raise Graph6Error(f"graphs beyond {MAX_VERTICES} vertices are not supported", 1)
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        start = 4
    else:
        n = data[0] - 63
        start = 1
    if n > MAX_VERTICES:
        raise Graph6Error(f"{n} vertices exceeds the {MAX_VERTICES}-vertex cap", 0)
    nbits = n * (n - 1) // 2
    expected = start + (nbits + 5) // 6
    if len(data) != expected:
        raise Graph6Error(
            f"expected {expected} bytes for n={n}, got {len(data)}", min(len(data), expected)
        )
    adj = [0] * n
    k = 0
    i, j = 0, 1
    for pos in range(start, expected):
        chunk = data[pos] - 63
        for shift in range(5, -1, -1):
            if k >= nbits:
                if chunk >> shift & 1:
                    raise Graph6Error("non-zero padding bits", pos)
                continue
            if chunk >> shift & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
            i += 1
            if i == j:
                i, j = 0, j + 1
    return Graph._trusted(n, adj)
