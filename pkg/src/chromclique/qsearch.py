"""Exhaustive computation of Q(n, c) = min{omega(G) : |V(G)| = n, chi(G) = c}.

Graphs are enumerated as labelled edge masks in ascending order (see
:meth:`Graph.edge_mask`). A graph on ``n`` vertices is a base graph on the
first ``n - 1`` vertices plus the neighbourhood ``N`` of the last vertex, and
its mask is ``base | N << E`` with ``E = (n-1)(n-2)/2``. Each shard fixes
``N``, which is exactly a slice of the high-order edge bits.

Within a shard, omega and alpha of every graph come from numpy tables of
clique numbers of induced subgraphs of the base graphs:
``omega(G) = max(omega(base), 1 + omega(base[N]))`` and likewise for alpha
through the complement. The exact coloring solver only runs on graphs that
could still lower the running minimum for some attainable chi.
"""

from __future__ import annotations

import functools
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError
from .graph import Graph, from_graph6, to_graph6
from .solvers import _greedy_clique, _k_colorable, chromatic_number, clique_number

DEFAULT_CAP = 7
HARD_CAP = 8
_TABLE_MAX = 6
_INF = 1 << 30


@dataclass(frozen=True)
class QTableEntry:
    n: int
    c: int
    q: int | None
    witness_graph6: str | None

    def row(self) -> tuple[int, int, str, str]:
        return (self.n, self.c, "" if self.q is None else str(self.q), self.witness_graph6 or "")


def _e(m: int) -> int:
    return m * (m - 1) // 2


@functools.lru_cache(maxsize=None)
def _omega_table(m: int) -> np.ndarray:
    """``T[S, b]`` = clique number of base graph ``b`` (on ``m`` vertices) induced on ``S``."""
    if m == 0:
        return np.zeros((1, 1), dtype=np.int8)
    prev = _omega_table(m - 1)
    nb = 1 << (m - 1)
    eprev = 1 << _e(m - 1)
    nbhd = np.arange(nb)
    out = np.empty((1 << m, nb * eprev), dtype=np.int8)
    top = 1 << (m - 1)
    for s in range(1 << m):
        sp = s & ~top
        without = np.broadcast_to(prev[sp], (nb, eprev))
        if s & top:
            with_top = prev[(sp & nbhd)] + 1
            out[s] = np.maximum(without, with_top).reshape(-1)
        else:
            out[s] = without.reshape(-1)
    return out


def _omega_row(m: int, s: int) -> np.ndarray:
    """Clique number of ``b[S]`` for every base graph ``b`` on ``m`` vertices."""
    if m <= _TABLE_MAX:
        return _omega_table(m)[s]
    prev = _omega_table(m - 1)
    top = 1 << (m - 1)
    sp = s & ~top
    nb = 1 << (m - 1)
    without = np.broadcast_to(prev[sp], (nb, prev.shape[1]))
    if not s & top:
        return np.ascontiguousarray(without).reshape(-1)
    with_top = prev[sp & np.arange(nb)] + 1
    return np.maximum(without, with_top).reshape(-1)


def _greedy_orders(n: int) -> list[list[int]]:
    rng = random.Random(n)
    orders = [list(range(n)), list(range(n - 1, -1, -1))]
    for _ in range(10):
        perm = list(range(n))
        rng.shuffle(perm)
        orders.append(perm)
    return orders


def _greedy_upper(n: int, nbhd: int, count: int) -> np.ndarray:
    """Least colour count over a fixed set of greedy orders, for every base graph in the shard."""
    m = n - 1
    base = np.arange(count, dtype=np.int64)
    edge = [[None] * n for _ in range(n)]
    e = 0
    for j in range(1, m):
        for i in range(j):
            bit = ((base >> e) & 1).astype(bool)
            edge[i][j] = edge[j][i] = bit
            e += 1
    for i in range(m):
        bit = np.full(count, bool(nbhd >> i & 1))
        edge[i][m] = edge[m][i] = bit
    # lowest clear bit of a small integer -> its index
    lowest_clear = np.array([(~x & (x + 1)).bit_length() - 1 for x in range(1 << n)], dtype=np.int8)
    best = np.full(count, n, dtype=np.int8)
    for order in _greedy_orders(n):
        colors = np.zeros((n, count), dtype=np.int8)
        for t, v in enumerate(order):
            used = np.zeros(count, dtype=np.int32)
            for u in order[:t]:
                used |= np.where(edge[u][v], np.left_shift(1, colors[u].astype(np.int32)), 0)
            colors[v] = lowest_clear[used]
        np.minimum(best, colors.max(axis=0) + 1, out=best)
    return best


def _graph_from_mask(n: int, mask: int) -> Graph:
    return Graph.from_edge_mask(n, mask)


@dataclass
class _ShardBest:
    q: list[int]
    mask: list[int | None]


def _scan_shard(
    n: int, nbhd: int, prune: bool, seeds: tuple[tuple[int, int] | None, ...] = ()
) -> list[tuple[int, int] | None]:
    """Best ``(omega, mask)`` per chromatic number among graphs whose last vertex has neighbourhood ``nbhd``.

    ``seeds[c]`` is a known ``(q, mask)`` for chi = c found elsewhere. Graphs
    that cannot beat it lexicographically are skipped; since the final merge
    takes the minimum over all shards and seeds, the result is unchanged.
    """
    m = n - 1
    full = (1 << m) - 1
    shift = _e(m)
    best = _ShardBest([_INF] * (n + 1), [None] * (n + 1))
    for c, seed in enumerate(seeds):
        if seed is not None:
            q, mask = seed
            # Earlier shards hold only smaller masks, so they may tie the seed.
            best.q[c] = q + 1 if nbhd <= mask >> shift else q
    whole = _omega_row(m, full)
    omega = np.maximum(whole, _omega_row(m, nbhd) + 1)
    # alpha(b[S]) is omega of the complement base, whose mask is full_edges - b.
    alpha = np.maximum(whole[::-1], _omega_row(m, full & ~nbhd)[::-1] + 1)
    omega = omega.astype(np.int16)

    if not prune:
        for b in range(len(omega)):
            mask = b | nbhd << shift
            g = _graph_from_mask(n, mask)
            w, _ = clique_number(g)
            chi, _ = chromatic_number(g)
            if w < best.q[chi]:
                best.q[chi], best.mask[chi] = w, mask
        return _pack(best, n)

    # chi <= n - alpha + 1, and chi <= any greedy colouring
    upper = np.minimum(n - alpha.astype(np.int16) + 1, _greedy_upper(n, nbhd, len(omega)))
    pos = 0
    total = len(omega)
    while pos < total:
        # relevant[w, hi]: some c in [w, hi] can still be improved by omega w.
        relevant = np.zeros((n + 2, n + 2), dtype=bool)
        for w in range(n + 1):
            for hi in range(w, n + 1):
                relevant[w, hi] = any(best.q[c] > w for c in range(w, hi + 1))
        hits = np.flatnonzero(relevant[omega[pos:], upper[pos:]])
        if not len(hits):
            break
        changed = False
        for h in hits.tolist():
            b = pos + h
            w, hi = int(omega[b]), int(upper[b])
            targets = [c for c in range(w, hi + 1) if best.q[c] > w]
            mask = b | nbhd << shift
            chi = _chi_if_relevant(n, mask, w, hi, min(targets))
            if chi is not None and best.q[chi] > w:
                best.q[chi], best.mask[chi] = w, mask
                pos = b + 1
                changed = True
                break
        if not changed:
            break
    return _pack(best, n)


def _chi_if_relevant(n: int, mask: int, lo: int, hi: int, cmin: int) -> int | None:
    """Exact chi when it is at least ``cmin``; None when it is provably smaller."""
    if lo == hi:
        return lo
    g = _graph_from_mask(n, mask)
    clique = _greedy_clique(g)
    if cmin - 1 >= lo and _k_colorable(g, cmin - 1, clique) is not None:
        return None
    for k in range(max(cmin, lo), hi):
        if _k_colorable(g, k, clique) is not None:
            return k
    return hi


def _pack(best: _ShardBest, n: int) -> list[tuple[int, int] | None]:
    return [
        None if best.mask[c] is None else (best.q[c], best.mask[c]) for c in range(n + 1)
    ]


def _scan_worker(args: tuple) -> list[tuple[int, int] | None]:
    return _scan_shard(*args)


def default_jobs() -> int:
    env = os.environ.get("CHROMCLIQUE_JOBS")
    return max(1, int(env)) if env else 1


def _check_cap(n: int, cap: int) -> None:
    if cap > HARD_CAP:
        raise CapacityError(f"cap {cap} exceeds the hard limit {HARD_CAP}")
    if n > cap:
        raise CapacityError(f"n={n} exceeds the enumeration cap {cap}")


def _merge(into: list[tuple[int, int] | None], res: list[tuple[int, int] | None]) -> None:
    for c, cand in enumerate(res):
        if cand is not None and (into[c] is None or cand < into[c]):
            into[c] = cand


@functools.lru_cache(maxsize=None)
def _solve_n(n: int, prune: bool, jobs: int) -> tuple[tuple[int, int] | None, ...]:
    if n == 0:
        return ((0, 0),)
    shards = list(range(1 << (n - 1)))
    merged: list[tuple[int, int] | None] = [None] * (n + 1)
    if jobs <= 1:
        for nbhd in shards:
            _merge(merged, _scan_shard(n, nbhd, prune, tuple(merged)))
        return tuple(merged)
    # Rounds of parallel shards; seeds only tighten between rounds.
    batch = 2 * jobs
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for start in range(0, len(shards), batch):
            seeds = tuple(merged)
            args = [(n, nbhd, prune, seeds) for nbhd in shards[start : start + batch]]
            for res in pool.map(_scan_worker, args):
                _merge(merged, res)
    return tuple(merged)


def q_value(n: int, c: int, *, cap: int = DEFAULT_CAP, prune: bool = True, jobs: int = 1) -> QTableEntry:
    """Exact Q(n, c) with the smallest-mask minimising graph as witness."""
    _check_cap(n, cap)
    if c < 1 or c > n:
        return QTableEntry(n, c, None, None)
    hit = _solve_n(n, prune, jobs)[c]
    if hit is None:
        return QTableEntry(n, c, None, None)
    q, mask = hit
    return QTableEntry(n, c, q, to_graph6(_graph_from_mask(n, mask)))


def q_table(n_max: int, *, cap: int = DEFAULT_CAP, prune: bool = True, jobs: int = 1) -> list[QTableEntry]:
    """All entries with ``1 <= c <= n <= n_max``, ordered by (n, c)."""
    _check_cap(n_max, cap)
    return [
        q_value(n, c, cap=cap, prune=prune, jobs=jobs)
        for n in range(1, n_max + 1)
        for c in range(1, n + 1)
    ]


def verify_entry(entry: QTableEntry) -> bool:
    """Re-solve the witness: it must have exactly chi = c and omega = q."""
    if entry.q is None:
        return entry.witness_graph6 is None
    g = from_graph6(entry.witness_graph6)
    return g.n == entry.n and chromatic_number(g)[0] == entry.c and clique_number(g)[0] == entry.q


def monotonicity_flags(entries: list[QTableEntry]) -> list[tuple[int, int]]:
    """``(n, c)`` pairs where Q(n, c) < Q(n, c-1); reported, never raised."""
    by_n: dict[int, dict[int, int]] = {}
    for e in entries:
        if e.q is not None:
            by_n.setdefault(e.n, {})[e.c] = e.q
    flags = []
    for n, row in sorted(by_n.items()):
        for c in sorted(row):
            if c - 1 in row and row[c] < row[c - 1]:
                flags.append((n, c))
    return flags

