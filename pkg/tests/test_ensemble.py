from fractions import Fraction
from math import ceil, comb, sqrt

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cliquefree.ensemble import (
    EnsembleConfig,
    concentration_report,
    critical_exponents,
    expected_clique_count,
    p_from_exponent,
    parse_probability,
    partite_prediction,
    sample_gnp,
    trial_seed,
)
from cliquefree.graph import complete_graph, cycle, write_edge_list


def reference_sample(n, p, seed):
    """Edge-by-edge restatement of the documented sampling rule."""
    raw = np.random.Philox(key=seed).random_raw(comb(n, 2)).tolist()
    cut = ceil(Fraction(p) * 2**64)
    edges, j = [], 0
    for u in range(n):
        for v in range(u + 1, n):
            if raw[j] < cut:
                edges.append((u, v))
            j += 1
    return edges


def test_extreme_probabilities():
    assert sample_gnp(20, 0, 5).edge_count == 0
    assert sample_gnp(20, 1, 5).adj == complete_graph(20).adj


@given(st.integers(2, 25), st.fractions(0, 1), st.integers(0, 2**64 - 1))
def test_sampler_follows_the_documented_rule(n, p, seed):
    assert sorted(sample_gnp(n, p, seed).edges()) == reference_sample(n, p, seed)


@given(st.integers(2, 30), st.fractions(0, 1), st.integers(0, 2**64 - 1))
def test_sampling_is_deterministic(n, p, seed):
    assert write_edge_list(sample_gnp(n, p, seed)) == write_edge_list(sample_gnp(n, p, seed))


def test_mean_edge_count_is_binomial():
    counts = np.array([sample_gnp(50, Fraction(1, 2), trial_seed(99, i)).edge_count for i in range(1000)])
    mean, pairs = counts.mean(), comb(50, 2)
    se = sqrt(pairs / 4) / sqrt(len(counts))
    assert abs(mean - pairs / 2) <= 3 * se


def test_edge_counts_within_four_sigma():
    n, p = 80, Fraction(3, 10)
    pairs = comb(n, 2)
    mu, sd = pairs * float(p), sqrt(pairs * float(p) * (1 - float(p)))
    inside = sum(abs(sample_gnp(n, p, trial_seed(7, i)).edge_count - mu) <= 4 * sd for i in range(300))
    assert inside >= 0.99 * 300


def test_expected_counts():
    assert expected_clique_count(10, Fraction(1, 2), 3) == 15
    assert expected_clique_count(20, Fraction(1, 4), 4) == Fraction(4845, 4096)
    assert expected_clique_count(9, Fraction(2, 7), 2) == comb(9, 2) * Fraction(2, 7)
    with pytest.raises(ValueError):
        expected_clique_count(3, Fraction(1, 2), 4)


def test_partite_prediction_ratio():
    # balanced 3-partition keeps 6/27 of the triangles of a dense host, up to O(1/n)
    n = 300
    ratio = partite_prediction(n, 1, 3, 4) / expected_clique_count(n, 1, 3)
    assert abs(ratio - Fraction(2, 9)) < Fraction(1, 100)


def test_critical_exponents():
    e = critical_exponents(3, complete_graph(4))
    assert (e.h_exponent, e.km_exponent) == (Fraction(2, 5), Fraction(1, 2))
    assert e.regime == "m2(H) > m2(K_m)"
    assert critical_exponents(3, cycle(5)).h_exponent == Fraction(3, 4)
    same = critical_exponents(3, complete_graph(3))
    assert same.h_exponent == same.km_exponent == Fraction(1, 2)
    assert same.regime == "m2(H) = m2(K_m)"


def test_probability_parsing():
    assert parse_probability("1/5") == Fraction(1, 5)
    assert parse_probability(0.25) == Fraction(1, 4)
    with pytest.raises(ValueError):
        parse_probability("3/2")
    p = p_from_exponent(150, Fraction(11, 20))
    assert p == Fraction(150.0 ** -0.55)


def test_config_validation():
    with pytest.raises(ValueError):
        EnsembleConfig(10, Fraction(1, 2), 0, trials=0)
    with pytest.raises(ValueError):
        EnsembleConfig(10, Fraction(2), 0)


def test_complete_host_ratio_is_exact():
    rep = concentration_report(EnsembleConfig(60, 1, 3, trials=1), 3)
    assert rep.ratio_to_expectation == 1.0 and rep.mean == comb(60, 3)


def test_empty_host_statistics():
    rep = concentration_report(EnsembleConfig(30, 0, 3, trials=3), 3)
    assert rep.mean == 0 and rep.variance == 0 and rep.mean_shared_fraction == 0


def test_workers_do_not_change_the_report():
    cfg = EnsembleConfig(40, Fraction(1, 3), 11, trials=4)
    assert concentration_report(cfg, 3) == concentration_report(cfg, 3, workers=2)
