"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run directly (``python tests/test_acceptance.py``) or through pytest, which
repeats the lines in the terminal summary. Set ``CHROMCLIQUE_ACCEPT_N8=1`` to
add the n = 8 enumeration to criterion 1 (minutes, not seconds).
"""

from __future__ import annotations

import itertools
import math
import os
import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from chromclique.asymptotics import k_of_n, pigeonhole_applies, scaling_check  # noqa: E402
from chromclique.constructions import (  # noqa: E402
    conjectured_q,
    jw_graph,
    jw_threshold,
    kn_minus_odd_cycle,
    verify_construction,
)
from chromclique.graph import Graph, induced, to_graph6  # noqa: E402
from chromclique.qsearch import HARD_CAP, default_jobs, q_table, q_value, verify_entry  # noqa: E402
from chromclique.recolor import (  # noqa: E402
    FOUR,
    THREE,
    CliqueWitness,
    ColoringStructure,
    TreeClique,
    case_tree,
    extract_structure,
    guaranteed_clique,
    outcome_is_valid,
    proposition_witness,
    recolor_t,
    synthetic_instance,
    theorem_witness,
    tree_clique_vertices,
)
from chromclique.solvers import (  # noqa: E402
    Coloring,
    ListAssignment,
    chromatic_number,
    clique_number,
    list_colorable,
    ramsey33_witness,
)

RESULTS: list[str] = []


def record(number: int, ok: bool, detail: str, elapsed: float) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail} ({elapsed:.1f}s)"
    RESULTS.append(line)
    print(line)


class Criterion:
    """Times a criterion body, applies its time limit and records one line."""

    def __init__(self, number: int, limit: float):
        self.number, self.limit = number, limit
        self.ok, self.detail = False, "did not finish"
        self.passed = False

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def finish(self, ok: bool, detail: str) -> None:
        self.ok, self.detail = ok, detail

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        if exc_type is not None:
            record(self.number, False, f"{exc_type.__name__}: {exc}", elapsed)
            return False
        detail = self.detail
        if elapsed > self.limit:
            detail += f"; over the {self.limit:.0f}s limit"
        self.passed = self.ok and elapsed <= self.limit
        record(self.number, self.passed, detail, elapsed)
        return False


def relabel(g: Graph, perm: list[int]) -> Graph:
    return Graph.from_edges(g.n, [(perm[a], perm[b]) for a, b in g.edges()])


def random_optimal_coloring(g: Graph, rng: random.Random) -> Coloring:
    """An optimal coloring found on a random relabelling, mapped back."""
    perm = list(range(g.n))
    rng.shuffle(perm)
    _, col = chromatic_number(relabel(g, perm))
    return Coloring(tuple(col.colors[perm[v]] for v in range(g.n)))


# --------------------------------------------------------------------------
# 1. exhaustive table


def test_criterion_1_exhaustive_table():
    with Criterion(1, limit=300) as c:
        jobs = default_jobs()
        entries = q_table(7, jobs=jobs)
        q = {(e.n, e.c): e.q for e in entries}
        problems = []
        for n in range(1, 8):
            if q[(n, n)] != n:
                problems.append(f"Q({n},{n})={q[(n, n)]}")
            if n >= 2 and q[(n, n - 1)] != n - 1:
                problems.append(f"Q({n},{n - 1})={q[(n, n - 1)]}")
        for (n, cc), want in {(5, 3): 2, (6, 4): 3, (7, 5): 4}.items():
            if q[(n, cc)] != want:
                problems.append(f"Q({n},{cc})={q[(n, cc)]}, want {want}")
        problems += [f"witness for ({e.n},{e.c}) fails" for e in entries if not verify_entry(e)]
        extra = ""
        if os.environ.get("CHROMCLIQUE_ACCEPT_N8") == "1":
            q85 = q_value(8, 5, cap=HARD_CAP, jobs=jobs).q
            extra = f", Q(8,5)={q85}"
            if q85 != 4:
                problems.append(f"Q(8,5)={q85}, want 4")
        c.finish(
            not problems,
            f"Q(n,n)=n, Q(n,n-1)=n-1 for n<=7; Q(5,3)=2, Q(6,4)=3, Q(7,5)=4{extra}; "
            f"{len(entries)} witnesses re-verified; jobs={jobs}; {len(problems)} problems",
        )
    assert c.passed, problems


# --------------------------------------------------------------------------
# 2. constructions


def test_criterion_2_constructions():
    with Criterion(2, limit=120) as c:
        failures = []
        count = 0
        for k in range(1, 7):
            for n in range(jw_threshold(k), jw_threshold(k) + 5):
                r = verify_construction(jw_graph(n, k))
                count += 1
                if (r.claimed_chi, r.claimed_omega) != (n - k, conjectured_q(n, k)):
                    failures.append(("jw", n, k))
        for k in range(2, 7):
            for n in range(2 * k + 1, 19):
                r = verify_construction(kn_minus_odd_cycle(n, k))
                count += 1
                if (r.claimed_chi, r.claimed_omega) != (n - k, n - k - 1):
                    failures.append(("kn-minus-cycle", n, k))
        c.finish(not failures, f"{count} constructions solver-verified, {len(failures)} mismatches")
    assert c.passed, failures[:5]


# --------------------------------------------------------------------------
# 3. witness engine soundness


def _perturbations(base: Graph, k: int, rng: random.Random, want: int, seen: set) -> list[Graph]:
    out = []
    attempts = 0
    while len(out) < want and attempts < 40 * want:
        attempts += 1
        perm = list(range(base.n))
        rng.shuffle(perm)
        g = relabel(base, perm)
        nonedges = [(a, b) for a in range(g.n) for b in range(a + 1, g.n) if not g.has_edge(a, b)]
        extra = rng.sample(nonedges, min(len(nonedges), rng.randint(1, 4)))
        h = Graph.from_edges(g.n, g.edges() + extra)
        if chromatic_number(h)[0] != h.n - k:
            continue
        key = to_graph6(h)
        if key in seen:
            continue
        seen.add(key)
        out.append(h)
    return out


def _corpus(ks, bases, rng, per_base):
    seen: set = set()
    corpus = []
    for k in ks:
        for base in bases(k):
            assert chromatic_number(base)[0] == base.n - k
            seen.add(to_graph6(base))
            corpus.append((base, k))
            corpus += [(h, k) for h in _perturbations(base, k, rng, per_base, seen)]
    return corpus


def test_criterion_3_witness_soundness():
    with Criterion(3, limit=600) as c:
        rng = random.Random(2024)
        invalid = []
        below = []
        not_improved = []
        optimal_runs = wasteful_runs = 0

        def jw_bases(k):
            return [jw_graph(jw_threshold(k) + d, k).graph for d in range(5)]

        def small_bases(k):
            return jw_bases(k) + [kn_minus_odd_cycle(2 * k + 1 + d, k).graph for d in range(5)]

        theorem_corpus = _corpus((5, 6), jw_bases, rng, per_base=55)
        prop_corpus = _corpus((3, 4), small_bases, rng, per_base=12)

        def check(g, k, coloring, optimal):
            nonlocal optimal_runs, wasteful_runs
            fn = theorem_witness if k >= 5 else proposition_witness
            out = fn(g, coloring, k)
            key = (to_graph6(g), k)
            if not outcome_is_valid(g, coloring, out):
                invalid.append(key)
            if optimal:
                optimal_runs += 1
                if not isinstance(out, CliqueWitness) or out.size < guaranteed_clique(g.n, k):
                    below.append(key)
            else:
                wasteful_runs += 1
                # a clique of the guaranteed size is also a valid answer, unless none exists
                if isinstance(out, CliqueWitness) and (
                    out.size < guaranteed_clique(g.n, k) or clique_number(g)[0] < guaranteed_clique(g.n, k)
                ):
                    not_improved.append(key)

        for corpus in (theorem_corpus, prop_corpus):
            for g, k in corpus:
                check(g, k, random_optimal_coloring(g, rng), True)
                # one color class split in two: n - (k-1) colors, so not optimal
                if k - 1 >= 3:
                    col = random_optimal_coloring(g, rng)
                    big = [v for v in range(g.n) if col.colors.count(col.colors[v]) >= 2]
                    colors = list(col.colors)
                    colors[rng.choice(big)] = max(colors) + 1
                    check(g, k - 1, Coloring(tuple(colors)), False)

        ok = not invalid and not below and not not_improved and len(theorem_corpus) >= 500
        c.finish(
            ok,
            f"{len(theorem_corpus)} graphs for k=5,6 and {len(prop_corpus)} for k=3,4; "
            f"{optimal_runs} optimal inputs all gave cliques >= bound ({len(below)} short), "
            f"{wasteful_runs} wasteful inputs ({len(not_improved)} unexplained cliques), {len(invalid)} invalid outputs",
        )
    assert c.passed, (invalid[:3], below[:3], not_improved[:3])


# --------------------------------------------------------------------------
# 4. case tree vs exact list coloring

U_PAIRS = list(itertools.combinations(range(5), 2))


def _u_representatives() -> list[tuple]:
    """One labelled graph per isomorphism class of 5-vertex graphs whose complement is triangle-free."""
    reps = set()
    for m in range(1 << 10):
        edges = [U_PAIRS[i] for i in range(10) if m >> i & 1]
        present = set(edges)
        if any(
            all(p not in present for p in itertools.combinations(t, 2)) for t in itertools.combinations(range(5), 3)
        ):
            continue
        reps.add(
            min(
                tuple(sorted(tuple(sorted((p[a], p[b]))) for a, b in edges))
                for p in itertools.permutations(range(5))
            )
        )
    return sorted(reps)


def _list_patterns(l: int):
    """Assignments of non-empty subsets of 1..l to u_1..u_5 covering 1..l, one per color-relabelling orbit."""
    perms = list(itertools.permutations(range(l)))
    tables = [[sum(1 << p[i] for i in range(l) if m >> i & 1) for m in range(1 << l)] for p in perms]
    full = (1 << l) - 1
    for combo in itertools.product(range(1, 1 << l), repeat=5):
        union = 0
        for m in combo:
            union |= m
        if union != full:
            continue
        if all(tuple(t[m] for m in combo) >= combo for t in tables):
            yield [{i + 1 for i in range(l) if m >> i & 1} for m in combo]


def _exact_restricted(st: ColoringStructure) -> bool:
    """U colored from L_i + {4}, plus 3 for at most one vertex, by the exact list-coloring solver."""
    u_graph, labels = induced(st.g, st.u_set)
    index = {v: i for i, v in enumerate(st.u)}
    lists = [set(st.lists.lists[index[v]]) for v in labels]
    three, four = -3, -4
    for holder in [None, *range(5)]:
        per = [l | {four} | ({three} if pos == holder else set()) for pos, l in enumerate(lists)]
        if list_colorable(u_graph, ListAssignment.of(per)) is not None:
            return True
    return False


def test_criterion_4_case_tree_oracle():
    with Criterion(4, limit=120) as c:
        reps = _u_representatives()
        disagreements = []
        bad_cliques = []
        bad_colorings = []
        counts = {}
        for l in (1, 2, 3, 4):
            patterns = list(_list_patterns(l))
            # all U classes for l <= 3; for l = 4 the U class rotates through the patterns
            pairs = [(u, p) for u in reps for p in patterns] if l <= 3 else [
                (reps[i % len(reps)], p) for i, p in enumerate(patterns)
            ]
            counts[l] = len(pairs)
            for u_edges, lists in pairs:
                g, coloring = synthetic_instance(list(u_edges), lists)
                st = extract_structure(g, coloring, 5)
                result = case_tree(st)
                exact = _exact_restricted(st)
                if isinstance(result, TreeClique):
                    clique = tree_clique_vertices(st, result)
                    if not g.is_clique(clique) or clique.bit_count() != g.n - 7:
                        bad_cliques.append((u_edges, lists))
                else:
                    # the tree's U coloring must itself satisfy the restricted rules
                    colors = result.u_colors
                    ok = colors.count(THREE) <= 1 and all(
                        c in (THREE, FOUR) or c in st.lists.lists[i] for i, c in enumerate(colors)
                    ) and all(
                        colors[a] != colors[b] for a, b in U_PAIRS if g.has_edge(st.u[a], st.u[b])
                    )
                    if not ok:
                        bad_colorings.append((u_edges, lists))
                full = recolor_t(st)
                if isinstance(result, TreeClique) != (full is None) or (
                    full is not None
                    and not (full.is_proper(g) and full.num_colors == coloring.num_colors - 1)
                ):
                    bad_colorings.append((u_edges, lists))
                if exact != (not isinstance(result, TreeClique)):
                    disagreements.append((u_edges, lists, result.route))
        total = sum(counts.values())
        ok = not disagreements and not bad_cliques and not bad_colorings and total >= 10_000
        c.finish(
            ok,
            f"{total} instances (l=1..4: {counts[1]}, {counts[2]}, {counts[3]}, {counts[4]}), "
            f"{len(disagreements)} disagreements, {len(bad_cliques)} bad fallback cliques, "
            f"{len(bad_colorings)} bad recolorings",
        )
    assert c.passed, disagreements[:3]


# --------------------------------------------------------------------------
# 5. Ramsey


def test_criterion_5_ramsey():
    with Criterion(5, limit=60) as c:
        start = time.perf_counter()
        failures = 0
        for mask in range(1 << 15):
            g = Graph.from_edge_mask(6, mask)
            if not ramsey33_witness(g, 0b111111).is_valid(g):
                failures += 1
        elapsed = time.perf_counter() - start
        ok = failures == 0 and elapsed <= 1.0
        c.finish(ok, f"32768 graphs on 6 vertices, {failures} failures, loop {elapsed:.2f}s (limit 1s)")
    assert c.passed


# --------------------------------------------------------------------------
# 6. scaling


def test_criterion_6_scaling():
    with Criterion(6, limit=180) as c:
        sizes = [16, 24, 32, 48, 60]
        reports = [scaling_check(3, fam, sizes, seed=7, repeats=3) for fam in ("bipartite", "triangle-free")]
        exps = {r.family: r.fitted_exponent for r in reports}
        pigeon_ok = all(
            s.alpha >= math.ceil(k_of_n(s.n, 3)) for r in reports for s in r.samples if pigeonhole_applies(s.n, 3)
        )
        ok = all(e <= 0.65 for e in exps.values()) and pigeon_ok and all(r.verified for r in reports)
        summary = ", ".join(f"{f} {e:.3f}" for f, e in exps.items())
        c.finish(ok, f"fitted exponents {summary} (limit 0.65, reference 0.5); alpha >= ceil(k(n)) held: {pigeon_ok}")
    assert c.passed


# --------------------------------------------------------------------------
# 7. solver oracles


def test_criterion_7_solver_oracles():
    with Criterion(7, limit=120) as c:
        mismatches = []
        exhaustive = 0
        for n in range(0, 7):
            for mask in range(1 << (n * (n - 1) // 2)):
                g = Graph.from_edge_mask(n, mask)
                adj = oracles.adjacency_from_mask(n, mask)
                exhaustive += 1
                if clique_number(g)[0] != oracles.omega(adj) or chromatic_number(g)[0] != oracles.chi(adj):
                    mismatches.append((n, mask))
        rng = random.Random(77)
        for _ in range(1000):
            n = rng.randint(1, 10)
            p = rng.random()
            edges = [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < p]
            g = Graph.from_edges(n, edges)
            adj = oracles.adjacency_from_edges(n, edges)
            if clique_number(g)[0] != oracles.omega(adj) or chromatic_number(g)[0] != oracles.chi(adj):
                mismatches.append((n, to_graph6(g)))
        ok = not mismatches
        c.finish(ok, f"{exhaustive} graphs with n<=6 and 1000 random graphs with n<=10, {len(mismatches)} mismatches")
    assert c.passed, mismatches[:5]


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
