from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliquefree.construct import tower, tower_complex
from cliquefree.density import (
    critical_density,
    d2_density,
    m2,
    m2_bruteforce,
    m2_flow,
    potential,
    potential_thresholds,
    verify_potential_lemma,
)
from cliquefree.graph import Graph, complete_graph, cycle, grotzsch, moser_spindle, wheel
from cliquefree.lemmas import check_mutated_tower
from strategies import graphs, graphs_with_subset


def test_d2_of_full_tower():
    t41 = tower(4, 1)
    assert d2_density(t41, range(5)) == Fraction(4, 3)


def test_d2_small_cases():
    assert d2_density(complete_graph(3), range(3)) == 2
    assert d2_density(cycle(5), range(5)) == Fraction(4, 3)


def test_d2_needs_three_vertices():
    with pytest.raises(ValueError):
        d2_density(complete_graph(3), {0, 1})


def test_m2_of_k4():
    assert m2(complete_graph(4)).value == Fraction(5, 2)


def test_m2_of_c5_is_the_whole_cycle():
    rep = m2(cycle(5))
    assert rep.value == Fraction(4, 3) and rep.witness == frozenset(range(5))


def test_m2_of_small_tower():
    rep = m2(tower(4, 1))
    assert rep.value == Fraction(3, 2)
    assert rep.witness == frozenset({0, 2, 3, 4})  # v00, v10, v11, v12


def test_m2_domain_errors():
    with pytest.raises(ValueError):
        m2(complete_graph(2))
    with pytest.raises(ValueError):
        m2(Graph.from_edges(4, [(0, 1)]))
    with pytest.raises(ValueError):
        m2(cycle(31))


def test_pruned_mode_lifts_the_cap():
    assert m2(cycle(31), pruned=True).value == Fraction(30, 29)


def test_witness_tie_break_prefers_smaller_then_lower_mask():
    # two disjoint triangles: both score 2; the lower one wins
    g = Graph.from_edges(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)])
    rep = m2(g)
    assert rep.value == 2 and rep.witness == frozenset({0, 1, 2})
    assert m2_flow(g).witness == rep.witness


@pytest.mark.parametrize("m", range(3, 9))
def test_m2_of_cliques(m):
    assert m2(complete_graph(m)).value == Fraction(m + 1, 2)


def test_potential_examples():
    assert potential(tower(4, 1), 4, range(5)) == 20
    assert potential(complete_graph(2), 4, {0, 1}) == 14
    assert potential(Graph.from_edges(3, []), 5, {1}) == 18
    with pytest.raises(ValueError):
        potential(complete_graph(3), 3, {0})


@given(graphs(min_n=3, max_n=9))
def test_m2_matches_bruteforce(g):
    if g.edge_count < 2:
        return
    rep = m2(g)
    assert rep.value == m2_bruteforce(g)
    assert d2_density(g, rep.witness) == rep.value
    assert m2_flow(g).value == rep.value


@given(graphs(min_n=3, max_n=9))
def test_flow_witness_matches_exhaustive_tie_break(g):
    if g.edge_count < 2:
        return
    exhaustive, flow = m2(g), m2_flow(g)
    if exhaustive.value > Fraction(1, 2):
        assert flow.witness == exhaustive.witness
    else:
        assert len(flow.witness) == len(exhaustive.witness)


@given(graphs_with_subset(min_n=3, max_n=10))
def test_m2_dominates_every_subset(data):
    g, s = data
    if g.edge_count < 2:
        return
    assert m2(g).value >= d2_density(g, s)


@given(graphs(min_n=3, max_n=9), st.data())
def test_adding_an_edge_never_lowers_m2(g, data):
    missing = [(u, v) for u, v in combinations(range(g.n), 2) if not g.has_edge(u, v)]
    if g.edge_count < 2 or not missing:
        return
    e = data.draw(st.sampled_from(missing))
    assert m2(g.with_edges([e])).value >= m2(g).value


@settings(max_examples=100)
@given(graphs_with_subset(min_n=3, max_n=12), st.sampled_from([4, 5, 6]))
def test_potential_threshold_iff_density_bound(data, k):
    g, a = data
    general, _ = potential_thresholds(k)
    assert (potential(g, k, a) >= general) == (d2_density(g, a) <= critical_density(k))


@pytest.mark.parametrize(
    "g, k",
    [
        (complete_graph(4), 4),
        (complete_graph(5), 5),
        (wheel(5), 4),
        (moser_spindle(), 4),
        (grotzsch(), 4),
    ],
    ids=["K4", "K5", "W5", "moser", "grotzsch"],
)
def test_critical_graphs_exceed_the_density_floor(g, k):
    from cliquefree.coloring import chromatic_number

    assert chromatic_number(g) == k
    assert m2(g).value > critical_density(k)


def test_tower_potential_check_passes():
    check = verify_potential_lemma(tower(4, 2), 4, 14, 20, (0, 1))
    assert check.passed and check.subsets_examined == 2**8 - 1 - 8


def test_complex_potential_check_passes():
    check = verify_potential_lemma(tower_complex(4, 1), 4, 14, 20, (0, 1))
    assert check.passed and check.subsets_examined == 2**14 - 1 - 14


def test_mutated_tower_is_caught():
    check = check_mutated_tower(4)
    assert not check.passed
    assert check.base_counterexample == frozenset(range(5))
    assert potential(tower(4, 1).with_edges([(2, 3)]), 4, range(5)) == 14


def test_lemma_check_rejects_large_graphs():
    with pytest.raises(ValueError):
        verify_potential_lemma(cycle(31), 4, 14)


def test_report_audit_table():
    rep = m2(tower(4, 1))
    # best edge counts per subset size of the 5-vertex tower
    assert rep.best_edges_by_size == {3: 2, 4: 4, 5: 5}
    assert rep.subsets_examined == 2**5 - 1 - 5 - 10
