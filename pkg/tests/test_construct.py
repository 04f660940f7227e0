import warnings
from fractions import Fraction
from math import comb

import pytest

from cliquefree.cliques import clique_number
from cliquefree.construct import (
    ConstructionParams,
    bridge,
    bridge_graph,
    g_k_epsilon,
    sparse_k_chromatic,
    sparse_k_chromatic_size,
    supercomplex,
    supercomplex_edge_count,
    t_for_epsilon,
    tower,
    tower_complex,
    tower_edge_count,
    tower_vertex,
)
from cliquefree.density import critical_density, d2_density, m2
from cliquefree.graph import LabelKind, bits, induced_subgraph


def test_small_tower_edges():
    v = lambda i, j: tower_vertex(4, i, j)  # noqa: E731
    expected = {(v(1, 0), v(1, 2)), (v(1, 1), v(1, 2)), (v(0, 0), v(1, 0)), (v(0, 0), v(1, 1)), (v(0, 1), v(1, 2))}
    g = tower(4, 1)
    assert g.n == 5 and g.edge_set() == expected


def test_tower_4_3_size():
    g = tower(4, 3)
    assert (g.n, g.edge_count) == (11, 15)


@pytest.mark.parametrize("k", range(4, 9))
def test_tower_edge_formula(k):
    for t in range(1, 21):
        g = tower(k, t)
        assert g.n == 2 + t * (k - 1)
        assert g.edge_count == t * (k + 1) * (k - 2) // 2 == tower_edge_count(k, t)


@pytest.mark.parametrize("k", range(4, 8))
def test_tower_density_identity(k):
    for t in range(1, 11):
        g = tower(k, t)
        assert d2_density(g, range(g.n)) == critical_density(k) - Fraction(1, g.n - 2)


@pytest.mark.parametrize("k", range(4, 7))
def test_tower_clique_number(k):
    for t in range(1, 5):
        assert clique_number(tower(k, t)) == k - 2


def test_levels_induce_near_cliques():
    k, t = 6, 3
    g = tower(k, t)
    for i in range(1, t + 1):
        level = [tower_vertex(k, i, j) for j in range(k - 1)]
        sub = induced_subgraph(g, level)
        assert sub.edge_count == comb(k - 1, 2) - 1
        assert not g.has_edge(level[0], level[1])


def test_odd_k_middle_vertex_follows_literal_inequalities():
    # k = 5: (k-2)/2 = 3/2 and (k-1)/2 = 2, so v_{i,2} hangs only off v_{i-1,1}
    g = tower(5, 1)
    mid = tower_vertex(5, 1, 2)
    assert g.has_edge(1, mid) and not g.has_edge(0, mid)
    assert sorted(bits(g.adj[0] & ~0b11)) == [tower_vertex(5, 1, 0), tower_vertex(5, 1, 1)]


def test_tower_labels_are_valid():
    k, t = 5, 3
    for lab in tower(k, t).labels[2:]:
        assert lab.kind is LabelKind.TOWER
        assert 1 <= lab.level <= t and 0 <= lab.position <= k - 2


def test_domain_errors():
    for bad in [(3, 1), (4, 0)]:
        with pytest.raises(ValueError):
            tower(*bad)
    with pytest.raises(ValueError):
        bridge(3)


def test_complex_sizes():
    g = tower_complex(4, 1)
    assert (g.n, g.edge_count) == (14, 20)
    assert tower_complex(5, 2).n == 42


def test_complex_falls_apart_without_the_base():
    k = 5
    g = induced_subgraph(tower_complex(k, 2), range(2, tower_complex(k, 2).n))
    seen, parts = 0, 0
    for v in range(g.n):
        if seen >> v & 1:
            continue
        parts += 1
        frontier = 1 << v
        while frontier:
            seen |= frontier
            nxt = 0
            for x in bits(frontier):
                nxt |= g.adj[x]
            frontier = nxt & ~seen
    assert parts == k


def test_bridge_of_four():
    expected = {
        ((1, 0), (2, 1)), ((1, 0), (3, 1)), ((2, 0), (3, 1)),
        ((2, 0), (4, 1)), ((3, 0), (4, 1)), ((4, 0), (1, 1)),
    }
    got = {frozenset(e) for e in bridge(4)}
    assert got == {frozenset(e) for e in expected}


@pytest.mark.parametrize("k", range(4, 10))
def test_bridge_shape(k):
    edges = bridge(k)
    assert len(edges) == comb(k, 2)
    g = bridge_graph(k)
    assert g.max_degree() == k // 2
    # bipartite between side 0 and side 1, one edge per tower pair
    assert all(a[1] != b[1] for a, b in edges)
    assert len({frozenset((a[0], b[0])) for a, b in edges}) == comb(k, 2)


def test_supercomplex_sizes():
    assert (supercomplex(4, 1).n, supercomplex(4, 1).edge_count) == (14, 26)
    assert (supercomplex(4, 2).n, supercomplex(4, 2).edge_count) == (26, 46)


def test_base_degrees_follow_the_level_rules():
    # per tower v00 sees v10, v11 (j <= 1) and v01 sees v12 (j >= 3/2)
    s = supercomplex(4, 1)
    assert s.degree(0) == 2 * 4 and s.degree(1) == 1 * 4
    for k in range(4, 9):
        s = supercomplex(k, 1)
        low = sum(1 for j in range(k - 1) if 2 * j <= k - 2)
        high = sum(1 for j in range(k - 1) if 2 * j >= k - 1)
        assert (s.degree(0), s.degree(1)) == (k * low, k * high)


@pytest.mark.parametrize("k", range(4, 9))
def test_family_edge_formulas(k):
    for t in (1, 2, 5, 20):
        assert tower_complex(k, t).edge_count == k * tower_edge_count(k, t)
        assert supercomplex(k, t).edge_count == supercomplex_edge_count(k, t)
    for t in (1, 2):
        g = sparse_k_chromatic(k, t)
        assert (g.n, g.edge_count) == sparse_k_chromatic_size(k, t)


def test_final_graph_sizes():
    g = sparse_k_chromatic(4, 1)
    assert (g.n, g.edge_count) == (76, 156)
    assert sparse_k_chromatic(4, 2).n == 148


def test_supercomplex_copies_meet_only_at_skeleton():
    k, t = 4, 1
    g = sparse_k_chromatic(k, t)
    for v in range(k, g.n):
        copy = g.labels[v].copy
        for x in bits(g.adj[v]):
            assert x in copy or g.labels[x].copy == copy


def test_epsilon_form():
    assert t_for_epsilon(4, 64) == 1
    assert t_for_epsilon(4, Fraction(64, 3)) == 3
    assert t_for_epsilon(5, Fraction(1, 2)) == 250
    p = ConstructionParams.from_epsilon(4, 32)
    assert p.t == 2
    with pytest.raises(ValueError):
        ConstructionParams(4, 1, Fraction(1))
    assert g_k_epsilon(4, 64).n == 76


def test_short_towers_warn_against_small_epsilon():
    with pytest.warns(UserWarning):
        sparse_k_chromatic(4, 1, epsilon=Fraction(1, 10))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        sparse_k_chromatic(4, 1, epsilon=64)


def test_final_graph_density_bound_at_t1():
    k, t = 4, 1
    eps = Fraction(k**3, t)
    assert m2(sparse_k_chromatic(k, t), pruned=True).value <= (1 + eps) * critical_density(k)
