"""Seeded G(n, p) sampling and clique-count statistics over trials.

Sampling is bit-reproducible: the generator is numpy's Philox4x64-10
counter-based bit generator keyed by the 64-bit seed.  The j-th raw 64-bit
output decides the j-th potential edge in lexicographic order (0,1), (0,2),
..., (n-2,n-1); the edge is present iff ``raw < ceil(p * 2**64)``.  This is an
exact dyadic threshold, so for rational p the inclusion probability is p up
to 2**-64.  Trial ``i`` of a batch uses seed ``base_seed ^ i``.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, comb

import numpy as np

from .cliques import count_cliques
from .density import m2
from .graph import Graph, complete_graph

TWO64 = 1 << 64
SEED_MASK = TWO64 - 1


def parse_probability(value) -> Fraction:
    """Exact probability from an int, Fraction, float (taken exactly) or 'a/b' text."""
    p = Fraction(value)
    if not 0 <= p <= 1:
        raise ValueError(f"probability {p} outside [0, 1]")
    return p


def p_from_exponent(n: int, a) -> Fraction:
    """n^(-a) rounded to the nearest double, then taken as an exact dyadic rational."""
    a = Fraction(a)
    return Fraction(float(n) ** -float(a))


def edge_threshold(p: Fraction) -> int:
    return ceil(p * TWO64)


def sample_gnp(n: int, p, seed: int) -> Graph:
    p = parse_probability(p)
    if p == 0 or n < 2:
        return Graph(n, (0,) * n)
    if p == 1:
        return complete_graph(n)
    pairs = comb(n, 2)
    raw = np.random.Philox(key=seed & SEED_MASK).random_raw(pairs)
    keep = raw < np.uint64(edge_threshold(p))
    rows, cols = np.triu_indices(n, 1)
    matrix = np.zeros((n, n), dtype=bool)
    matrix[rows[keep], cols[keep]] = True
    matrix |= matrix.T
    return Graph.from_adjacency_matrix(matrix)


def trial_seed(base_seed: int, trial: int) -> int:
    return (base_seed ^ trial) & SEED_MASK


def expected_clique_count(n: int, p, m: int) -> Fraction:
    """C(n, m) p^C(m, 2)."""
    if m > n:
        raise ValueError(f"m={m} exceeds n={n}")
    return comb(n, m) * parse_probability(p) ** comb(m, 2)


def partite_prediction(n: int, p, m: int, k: int) -> Fraction:
    """C(k-1, m) (n/(k-1))^m p^C(m, 2): K_m copies kept by a balanced (k-1)-partition."""
    return comb(k - 1, m) * Fraction(n, k - 1) ** m * parse_probability(p) ** comb(m, 2)


@dataclass(frozen=True)
class CriticalExponents:
    m2_h: Fraction
    m2_km: Fraction

    @property
    def h_exponent(self) -> Fraction:
        """1/m2(H): the edge-probability threshold is n^(-1/m2(H))."""
        return 1 / self.m2_h

    @property
    def km_exponent(self) -> Fraction:
        return 1 / self.m2_km

    @property
    def regime(self) -> str:
        if self.m2_h > self.m2_km:
            return "m2(H) > m2(K_m)"
        if self.m2_h == self.m2_km:
            return "m2(H) = m2(K_m)"
        return "m2(H) < m2(K_m)"


def critical_exponents(m: int, h: Graph) -> CriticalExponents:
    if m < 3:
        raise ValueError("m2(K_m) needs m >= 3")
    return CriticalExponents(
        m2_h=m2(h, pruned=h.n > 30).value,
        m2_km=m2(complete_graph(m)).value,
    )


@dataclass(frozen=True)
class EnsembleConfig:
    n: int
    p: Fraction
    seed: int
    trials: int = 1

    def __post_init__(self):
        object.__setattr__(self, "p", parse_probability(self.p))
        if self.trials < 1:
            raise ValueError("trials must be >= 1")


@dataclass(frozen=True)
class ConcentrationReport:
    n: int
    p: Fraction
    m: int
    trials: int
    mean: float
    variance: float
    expected: Fraction
    ratio_to_expectation: float
    mean_shared_fraction: float
    mean_sharing_pairs: float

    CSV_FIELDS = (
        "n", "p", "m", "trials", "mean", "variance", "expected",
        "ratio_to_expectation", "mean_shared_fraction", "mean_sharing_pairs",
    )

    def csv_row(self) -> str:
        vals = [
            self.n, self.p, self.m, self.trials,
            f"{self.mean:.6f}", f"{self.variance:.6f}", f"{float(self.expected):.6f}",
            f"{self.ratio_to_expectation:.6f}", f"{self.mean_shared_fraction:.6f}",
            f"{self.mean_sharing_pairs:.6f}",
        ]
        return ",".join(map(str, vals))


def _trial_stats(args) -> tuple[int, int, int]:
    n, p, seed, m = args
    stats = count_cliques(sample_gnp(n, p, seed), m)
    return stats.total, stats.shared_copies, stats.sharing_pairs


def concentration_report(cfg: EnsembleConfig, m: int, workers: int = 1) -> ConcentrationReport:
    """Clique-count mean/variance over trials and the share of edge-sharing copies.

    ``mean_shared_fraction`` averages, over trials with at least one copy, the
    fraction of K_m copies that share an edge with another copy.
    """
    jobs = [(cfg.n, cfg.p, trial_seed(cfg.seed, i), m) for i in range(cfg.trials)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_trial_stats, jobs))
    else:
        results = [_trial_stats(j) for j in jobs]
    totals = np.array([r[0] for r in results], dtype=float)
    fractions = [s / t for t, s, _ in results if t]
    expected = expected_clique_count(cfg.n, cfg.p, m)
    mean = float(totals.mean())
    return ConcentrationReport(
        n=cfg.n,
        p=cfg.p,
        m=m,
        trials=cfg.trials,
        mean=mean,
        variance=float(totals.var(ddof=1)) if cfg.trials > 1 else 0.0,
        expected=expected,
        ratio_to_expectation=mean / float(expected) if expected else float("nan"),
        mean_shared_fraction=float(np.mean(fractions)) if fractions else 0.0,
        mean_sharing_pairs=float(np.mean([r[2] for r in results])),
    )
