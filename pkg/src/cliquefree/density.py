"""2-density, d2-density and the potential function, computed exactly.

All comparisons are made on :class:`fractions.Fraction` values or on integers;
floats only ever pre-filter candidates that are then re-checked exactly.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Iterable

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order, maximum_flow

from .graph import EXHAUSTIVE_CAP, BudgetExceeded, Graph, bits, to_mask
from .subsets import SubsetBlock, SubsetSweep, first_by_size_then_mask


def d2_density(g: Graph, a: Iterable[int] | int) -> Fraction:
    mask = to_mask(a)
    size = mask.bit_count()
    if size < 3:
        raise ValueError(f"d2-density needs |A| >= 3, got {size}")
    return Fraction(g.edges_within(mask) - 1, size - 2)


def potential(g: Graph, k: int, a: Iterable[int] | int) -> int:
    """(k+1)(k-2)|A| - 2(k-1)e(G[A])."""
    if k < 4:
        raise ValueError("potential is defined here for k >= 4")
    mask = to_mask(a)
    if not mask:
        raise ValueError("potential of the empty set is not used")
    return (k + 1) * (k - 2) * mask.bit_count() - 2 * (k - 1) * g.edges_within(mask)


def critical_density(k: int) -> Fraction:
    """(k+1)(k-2) / (2(k-1)): the 2-density floor for k-chromatic graphs."""
    return Fraction((k + 1) * (k - 2), 2 * (k - 1))


def potential_thresholds(k: int) -> tuple[int, int]:
    """(general, base) lower bounds used throughout the tower lemmas."""
    base = 2 * (k + 1) * (k - 2)
    return base - 2 * (k - 1), base


@dataclass
class DensityReport:
    value: Fraction
    witness: frozenset[int]
    subsets_examined: int
    method: str = "exhaustive"
    best_edges_by_size: dict[int, int] = field(default_factory=dict)

    @property
    def witness_size(self) -> int:
        return len(self.witness)


def m2(g: Graph, *, pruned: bool = False, budget: float | None = None) -> DensityReport:
    """Maximum of (e(G[A]) - 1)/(|A| - 2) over vertex sets with |A| >= 3.

    Only induced subgraphs are examined: on a fixed vertex set the ratio is
    largest with every available edge present.  Ties go to the smallest
    witness, then to the smallest bitmask.  Graphs above the exhaustive cap
    need ``pruned=True``, which switches to the flow-based search; its
    ``budget`` is a wall-clock limit in seconds.
    """
    if g.n < 3:
        raise ValueError("m2 needs at least 3 vertices")
    if g.edge_count < 2:
        raise ValueError("m2 is only computed for graphs with at least 2 edges")
    if pruned:
        return m2_flow(g, budget)
    if g.n > EXHAUSTIVE_CAP:
        raise ValueError(f"n={g.n} exceeds exhaustive cap {EXHAUSTIVE_CAP}; pass pruned=True")
    return _m2_exhaustive(g)


def _m2_exhaustive(g: Graph) -> DensityReport:
    sweep = SubsetSweep(g)
    order = np.argsort(sweep.low_sizes, kind="stable")
    starts = np.searchsorted(sweep.low_sizes[order], np.arange(len(sweep.low) + 1))

    best: dict[int, int] = {}
    holders: dict[int, list[int]] = {}
    for block in sweep:
        maxima = np.maximum.reduceat(block.edges[order], starts)
        offset = block.high_mask.bit_count()
        for low_size, e in enumerate(maxima.tolist()):
            s = low_size + offset
            if s < 3:
                continue
            if e > best.get(s, -1):
                best[s] = e
                holders[s] = [block.high_mask]
            elif e == best[s]:
                holders[s].append(block.high_mask)

    value, size = max((Fraction(e - 1, s - 2), -s) for s, e in best.items())
    size = -size
    target = best[size]
    witness_mask = min(
        int(blk.masks[(blk.sizes == size) & (blk.edges == target)].min())
        for blk in map(sweep.block_at, holders[size])
    )
    examined = (1 << g.n) - 1 - g.n - comb(g.n, 2)
    return DensityReport(value, frozenset(bits(witness_mask)), examined, "exhaustive", dict(sorted(best.items())))


def m2_bruteforce(g: Graph) -> Fraction:
    """Reference m2 by direct enumeration; independent of the sweep engine."""
    from itertools import combinations

    best = None
    for s in range(3, g.n + 1):
        for a in combinations(range(g.n), s):
            e = sum(g.has_edge(u, v) for u, v in combinations(a, 2))
            r = Fraction(e - 1, s - 2)
            if best is None or r > best:
                best = r
    return best


# -- flow-based exact search for large graphs ------------------------------


class _ClosureSolver:
    """max over S ⊇ forced of q*e(S) - p*|S| via min cut (project selection).

    Network: source -> edge-node (cap q), edge-node -> both endpoints (inf),
    vertex -> sink (cap p), source -> forced vertex (inf).  The minimal
    source side of a minimum cut is the inclusion-minimal optimal S.
    """

    def __init__(self, g: Graph):
        self.g = g
        self.edges = list(g.edges())
        self.n_nodes = 2 + g.n + len(self.edges)

    def solve(self, lam: Fraction, forced: Iterable[int]) -> tuple[int, int]:
        """Return (max value scaled by q, minimal optimal vertex mask)."""
        g, edges = self.g, self.edges
        p, q = lam.numerator, lam.denominator
        inf = q * len(edges) + p * g.n + 1
        if inf >= 2**31:
            raise OverflowError("capacities exceed int32 range")
        src, dst, cap = [], [], []
        for i, (u, v) in enumerate(edges):
            node = 2 + g.n + i
            src += [0, node, node]
            dst += [node, 2 + u, 2 + v]
            cap += [q, inf, inf]
        for v in range(g.n):
            src.append(2 + v)
            dst.append(1)
            cap.append(p)
        for v in forced:
            src.append(0)
            dst.append(2 + v)
            cap.append(inf)
        cap_m = csr_matrix(
            (np.array(cap, dtype=np.int32), (np.array(src), np.array(dst))),
            shape=(self.n_nodes, self.n_nodes),
        )
        result = maximum_flow(cap_m, 0, 1)
        residual = (cap_m - result.flow).tocsr()
        residual.data[residual.data < 0] = 0
        residual.eliminate_zeros()
        reach = breadth_first_order(residual, 0, directed=True, return_predecessors=False)
        mask = 0
        for node in reach.tolist():
            if 2 <= node < 2 + g.n:
                mask |= 1 << (node - 2)
        return q * len(edges) - int(result.flow_value), mask


def m2_flow(g: Graph, budget: float | None = None) -> DensityReport:
    """Exact m2 by Dinkelbach iteration over forced-edge min-cut problems.

    For a candidate value lam, m2 > lam iff some edge uv admits S ⊇ {u, v}
    with e(S) - 1 - lam(|S| - 2) > 0 (S = {u, v} itself scores 0).  Each
    improving S raises lam to d2(S); the loop stops at the optimum.  The
    smallest witness is then found by forcing one edge plus one neighbouring
    vertex, which suffices because witnesses of value > 1/2 are connected.
    """
    end = None if budget is None else time.monotonic() + budget

    def tick():
        if end is not None and time.monotonic() > end:
            raise BudgetExceeded("m2 time budget exhausted")

    solver = _ClosureSolver(g)
    edges = solver.edges
    examined = 0

    lam, wit = _initial_candidate(g)
    while True:
        improved = None
        for u, v in edges:
            tick()
            _, mask = solver.solve(lam, (u, v))
            examined += 1
            if mask.bit_count() >= 3:
                r = d2_density(g, mask)
                if r > lam and (improved is None or r > improved[0]):
                    improved = (r, mask)
        if improved is None:
            break
        lam, wit = improved

    best = (wit.bit_count(), wit)
    for u, v in edges:
        others = (g.adj[u] | g.adj[v]) & ~(1 << u | 1 << v)
        if lam <= Fraction(1, 2):
            others = g.vertex_mask & ~(1 << u | 1 << v)
        for w in bits(others):
            tick()
            _, mask = solver.solve(lam, (u, v, w))
            examined += 1
            if d2_density(g, mask) == lam:
                best = min(best, (mask.bit_count(), mask))
    return DensityReport(lam, frozenset(bits(best[1])), examined, "flow")


def _initial_candidate(g: Graph) -> tuple[Fraction, int]:
    for v in range(g.n):
        nb = list(bits(g.adj[v]))
        if len(nb) >= 2:
            mask = 1 << v | 1 << nb[0] | 1 << nb[1]
            return d2_density(g, mask), mask
    (a, b), (c, d) = list(g.edges())[:2]
    mask = 1 << a | 1 << b | 1 << c | 1 << d
    return d2_density(g, mask), mask


# -- exhaustive potential checks -------------------------------------------


@dataclass
class LemmaCheck:
    passed: bool
    subsets_examined: int
    violations: int
    counterexample: frozenset[int] | None = None
    counterexample_potential: int | None = None
    base_counterexample: frozenset[int] | None = None

    def __bool__(self) -> bool:
        return self.passed


Restriction = Callable[[SubsetBlock], np.ndarray]


def verify_potential_lemma(
    g: Graph,
    k: int,
    threshold_general: int,
    threshold_base: int | None = None,
    base: Iterable[int] | int = 0,
    *,
    universe: Iterable[int] | None = None,
    max_size: int | None = None,
    restrict: Restriction | None = None,
) -> LemmaCheck:
    """Check every subset A with |A| >= 2 against the potential bounds.

    Every admissible A must have potential >= ``threshold_general``, and
    >= ``threshold_base`` whenever ``base`` ⊆ A.  Admissible means: drawn
    from ``universe`` (all vertices by default), of size at most
    ``max_size``, and accepted by the vectorised ``restrict`` predicate.

    ``counterexample`` is the violating set that is smallest by size, then
    by bitmask; ``base_counterexample`` is the same for the base bound.
    """
    if k < 4:
        raise ValueError("potential lemmas are stated for k >= 4")
    per_vertex = (k + 1) * (k - 2)
    per_edge = 2 * (k - 1)
    base_mask = np.uint64(to_mask(base))
    check_base = threshold_base is not None and int(base_mask) != 0

    sweep = SubsetSweep(g, None if universe is None else list(universe))
    examined = violations = 0
    worst_general = worst_base = None
    for block in sweep:
        ok = block.sizes >= 2
        if max_size is not None:
            ok &= block.sizes <= max_size
        if restrict is not None:
            ok &= restrict(block)
        pot = per_vertex * block.sizes.astype(np.int64) - per_edge * block.edges.astype(np.int64)
        bad = ok & (pot < threshold_general)
        if check_base:
            bad_base = ok & ((block.masks & base_mask) == base_mask) & (pot < threshold_base)
            cand = first_by_size_then_mask(block, bad_base)
            if cand is not None and (worst_base is None or cand < worst_base):
                worst_base = cand
            bad |= bad_base
        examined += int(ok.sum())
        violations += int(bad.sum())
        cand = first_by_size_then_mask(block, bad)
        if cand is not None and (worst_general is None or cand < worst_general):
            worst_general = cand

    result = LemmaCheck(violations == 0, examined, violations)
    if worst_general is not None:
        result.counterexample = frozenset(bits(worst_general[1]))
        result.counterexample_potential = potential(g, k, worst_general[1])
    if worst_base is not None:
        result.base_counterexample = frozenset(bits(worst_base[1]))
    return result
