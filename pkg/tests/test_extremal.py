from fractions import Fraction
from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliquefree.cliques import count_cliques
from cliquefree.construct import tower
from cliquefree.ensemble import p_from_exponent, sample_gnp
from cliquefree.extremal import (
    CopyLimitExceeded,
    contains,
    deletion_heuristic,
    densest_part,
    enumerate_copies,
    exact_max_hfree_cliques,
    exhaustive_max_hfree_cliques,
    find_embedding,
    km_cleanup,
    naive_contains,
    partite_heuristic,
)
from cliquefree.graph import BudgetExceeded, Graph, complete_graph, cycle, disjoint_union, path
from strategies import graphs

K3 = complete_graph(3)
K4 = complete_graph(4)
K3_PENDANT = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (2, 3)])


def assert_consistent(host: Graph, res, m: int):
    assert res.surviving_edges <= host.edge_set()
    assert count_cliques(res.survivor, m).total == res.clique_count


# -- containment ----------------------------------------------------------------


def test_containment_examples():
    assert not contains(cycle(5), K3)
    assert contains(K4.without_edges([(0, 1)]), K3)
    assert not contains(tower(4, 2), K3)


def test_embedding_is_a_witness():
    g = K4.without_edges([(0, 1)])
    img = find_embedding(g, K3)
    assert len(set(img)) == 3 and all(g.has_edge(img[a], img[b]) for a, b in K3.edges())


def test_oversized_patterns_are_rejected_fast():
    assert not contains(K3, K4)
    assert not contains(path(6), cycle(4))


@settings(max_examples=150)
@given(graphs(max_n=8), graphs(min_n=1, max_n=5))
def test_containment_matches_naive(g, pattern):
    assert contains(g, pattern) == naive_contains(g, pattern)


# -- copy enumeration -----------------------------------------------------------


def test_copy_counts():
    assert len(enumerate_copies(K4, K3)) == 4
    assert len(enumerate_copies(complete_graph(5), K4)) == 5
    assert len(enumerate_copies(cycle(6), path(3))) == 6


def test_copy_cap_is_a_hard_failure():
    with pytest.raises(CopyLimitExceeded):
        enumerate_copies(complete_graph(6), K3, cap=5)
    with pytest.raises(BudgetExceeded):
        enumerate_copies(complete_graph(6), path(3), cap=5)


@given(graphs(max_n=7), graphs(min_n=2, max_n=4))
def test_copies_are_distinct_edge_sets(g, pattern):
    if pattern.edge_count == 0:
        return
    copies = enumerate_copies(g, pattern)
    p_edges = list(pattern.edges())
    brute = set()
    for verts in combinations(range(g.n), pattern.n):
        for img in product(verts, repeat=pattern.n):
            if len(set(img)) < pattern.n:
                continue
            if all(g.has_edge(img[a], img[b]) for a, b in p_edges):
                brute.add((frozenset(frozenset((img[a], img[b])) for a, b in p_edges), frozenset(img)))
    assert len(copies) == len(brute)


# -- K_m cleanup ----------------------------------------------------------------


def test_cleanup_examples():
    assert km_cleanup(K4, 3).edge_count == 0
    two = disjoint_union(K3, K3).with_edges([(2, 3)])
    assert km_cleanup(two, 3).edge_set() == disjoint_union(K3, K3).edge_set()
    assert km_cleanup(K3, 3).edge_set() == K3.edge_set()


@given(graphs(max_n=10), st.sampled_from([3, 4]))
def test_cleanup_leaves_an_edge_disjoint_packing(g, m):
    out = km_cleanup(g, m)
    assert out.edge_set() <= g.edge_set()
    stats = count_cliques(out, m)
    assert all(stats.per_edge.get(e, 0) == 1 for e in out.edges())
    assert km_cleanup(out, m).adj == out.adj


# -- exact search ---------------------------------------------------------------


def test_exact_examples():
    assert exact_max_hfree_cliques(K4, K4, 3).clique_count == 2
    res = exact_max_hfree_cliques(complete_graph(5), K4, 3)
    assert res.clique_count == 4 and res.h_free_certified
    assert exact_max_hfree_cliques(cycle(5), K3, 3).clique_count == 0


def test_exact_matches_bruteforce_on_small_cases():
    assert exhaustive_max_hfree_cliques(K4, K4, 3) == 2
    assert exhaustive_max_hfree_cliques(complete_graph(5), K4, 3) == 4


def test_exact_budget_is_a_hard_failure():
    with pytest.raises(BudgetExceeded):
        exact_max_hfree_cliques(complete_graph(7), K4, 3, max_nodes=3)


@settings(max_examples=40)
@given(graphs(max_n=7), st.sampled_from([(K4, 3), (K3_PENDANT, 3), (K3, 2)]))
def test_exact_matches_exhaustive(g, case):
    h, m = case
    if g.edge_count > 12:
        return
    res = exact_max_hfree_cliques(g, h, m)
    assert res.clique_count == exhaustive_max_hfree_cliques(g, h, m)
    assert res.h_free_certified
    assert_consistent(g, res, m)


# -- heuristics -----------------------------------------------------------------


def test_partite_on_k6():
    res = partite_heuristic(complete_graph(6), 4, 3, restarts=3, seed=1)
    assert res.clique_count == 8 and res.h_free_certified
    # no tripartition of K6 does better
    best = max(
        sum(len({a[u], a[v], a[w]}) == 3 for u, v, w in combinations(range(6), 3))
        for a in product(range(3), repeat=6)
    )
    assert best == 8


def test_partite_on_c5():
    res = partite_heuristic(cycle(5), 4, 3)
    assert res.clique_count == 0 and res.survivor.edge_count > 0


def test_partite_needs_k_above_m():
    with pytest.raises(ValueError):
        partite_heuristic(K4, 3, 3)


def test_partite_keeps_its_share_of_a_dense_host():
    ratios = []
    for s in range(5):
        host = sample_gnp(60, Fraction(1, 2), s)
        res = partite_heuristic(host, 4, 3, restarts=2, seed=s)
        assert_consistent(host, res, 3)
        ratios.append(res.clique_count / count_cliques(host, 3).total)
    assert sum(ratios) / len(ratios) >= 0.8 * 6 / 27


def test_partite_survivor_is_colourable():
    from cliquefree.coloring import is_q_colorable

    host = sample_gnp(30, Fraction(1, 2), 4)
    res = partite_heuristic(host, 4, 3, restarts=2, seed=4)
    assert is_q_colorable(res.survivor, 3) is not None
    assert not contains(res.survivor, K4)


def test_deletion_examples():
    res = deletion_heuristic(K4, K4, 3)
    assert res.clique_count == 2 and res.h_free_certified
    host = cycle(7)
    res = deletion_heuristic(host, K4, 3)
    assert res.survivor.adj == host.adj and res.clique_count == 0


def test_densest_part_choice():
    assert densest_part(K3_PENDANT).edge_set() == K3.edge_set()
    assert densest_part(K4).edge_set() == K4.edge_set()
    assert densest_part(path(2)).edge_count == 1


def test_deletion_keeps_most_triangles_in_the_sparse_regime():
    n = 40
    p = p_from_exponent(n, Fraction(3, 5))
    kept = total = 0
    for s in range(20):
        host = sample_gnp(n, p, s)
        res = deletion_heuristic(host, K4, 3)
        assert res.h_free_certified
        kept += res.clique_count
        total += count_cliques(host, 3).total
    assert kept >= 0.9 * total


@settings(max_examples=30)
@given(graphs(min_n=4, max_n=8), st.integers(0, 2**32))
def test_exact_dominates_heuristics(g, seed):
    if g.edge_count > 18:
        return
    exact = exact_max_hfree_cliques(g, K4, 3)
    part = partite_heuristic(g, 4, 3, restarts=2, seed=seed)
    dele = deletion_heuristic(g, K4, 3)
    for res in (part, dele):
        assert_consistent(g, res, 3)
        assert res.h_free_certified and not contains(res.survivor, K4)
        assert res.clique_count <= exact.clique_count
