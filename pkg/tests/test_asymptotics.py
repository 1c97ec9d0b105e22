import math
import random

import pytest

from chromclique.asymptotics import (
    FAMILIES,
    erdos_szekeres_bound,
    fit_exponent,
    greedy_mis_coloring,
    k_of_n,
    mycielski_family,
    pigeonhole_applies,
    random_triangle_free,
    scaling_check,
)
from chromclique.errors import ContractViolation
from chromclique.graph import Graph, complete, cycle, edgeless
from chromclique.solvers import chromatic_number, clique_number


def test_erdos_szekeres():
    assert erdos_szekeres_bound(3, 3) == 6
    assert erdos_szekeres_bound(4, 3) == 10
    assert all(erdos_szekeres_bound(k, 2) == k for k in range(1, 20))
    assert erdos_szekeres_bound(200, 200) == math.comb(398, 199)
    for k in range(1, 8):
        for q in range(1, 8):
            assert erdos_szekeres_bound(k, q) == erdos_szekeres_bound(q, k)
    with pytest.raises(ValueError):
        erdos_szekeres_bound(0, 3)


def test_k_of_n():
    assert k_of_n(16, 3) == pytest.approx(math.sqrt(32) - 3)
    assert k_of_n(16, 3) == pytest.approx(2.657, abs=1e-3)
    assert k_of_n(50, 3) == pytest.approx(7.0)
    assert all(k_of_n(n, 2) == pytest.approx(n - 2) for n in range(1, 30))


def test_pigeonhole_precondition_and_bound():
    # n = (k(n) + q)^(q-1) / (q-1)! holds identically; the Ramsey form is what certifies alpha
    for n in range(1, 61):
        for q in (3, 4):
            k = k_of_n(n, q)
            assert (k + q) ** (q - 1) / math.factorial(q - 1) == pytest.approx(n)
            assert pigeonhole_applies(n, q)


def test_greedy_mis_examples():
    assert greedy_mis_coloring(edgeless(7)).num_colors == 1
    assert greedy_mis_coloring(complete(4)).num_colors == 4
    c = greedy_mis_coloring(cycle(5))
    assert c.num_colors == 3 and c.colors == (1, 2, 1, 2, 3)


def test_greedy_mis_bounds():
    rng = random.Random(2)
    for _ in range(40):
        n = rng.randint(1, 12)
        g = Graph.from_edges(n, [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < 0.4])
        c = greedy_mis_coloring(g)
        assert c.is_proper(g)
        assert chromatic_number(g)[0] <= c.num_colors <= n


def test_families_respect_omega():
    rng = random.Random(0)
    for name, make in FAMILIES.items():
        for n in (8, 17, 30):
            g = make(n, rng)
            assert g.n == n
            assert clique_number(g)[0] < 3, name


def test_triangle_free_process_is_maximal():
    g = random_triangle_free(20, random.Random(1))
    for a in range(20):
        for b in range(a + 1, 20):
            if not g.has_edge(a, b):
                assert g.adj[a] & g.adj[b]


def test_mycielski_chromatic_growth():
    assert chromatic_number(mycielski_family(11, random.Random(0)))[0] == 4
    assert clique_number(mycielski_family(23, random.Random(0)))[0] == 2


def test_cycle_family_uses_three_colors():
    report = scaling_check(3, "cycle", [9, 16, 25, 40])
    assert [s.colors_used for s in report.samples] == [3, 3, 3, 3]
    assert report.fitted_exponent == pytest.approx(0.0, abs=1e-9)


def test_bipartite_scaling():
    report = scaling_check(3, "bipartite", [16, 24, 32, 48], seed=1)
    assert report.fitted_exponent <= 0.5 + 0.15
    assert report.reference_exponent == 0.5
    assert report.verified


def test_single_size_is_an_error():
    with pytest.raises(ValueError):
        scaling_check(3, "bipartite", [16, 16])
    with pytest.raises(ValueError):
        fit_exponent([10], [3])


def test_omega_violation_is_rejected():
    with pytest.raises(ContractViolation):
        scaling_check(2, "cycle", [9, 11])


def test_size_cap_and_family_checks():
    with pytest.raises(ContractViolation):
        scaling_check(3, "bipartite", [16, 61])
    with pytest.raises(ContractViolation):
        scaling_check(3, "petersen", [16, 24])


def test_deterministic_given_seed():
    a = scaling_check(3, "triangle-free", [12, 20], seed=5, repeats=2)
    b = scaling_check(3, "triangle-free", [12, 20], seed=5, repeats=2)
    assert a == b
