"""Exact K_m enumeration, clique number, per-edge statistics."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterator

from .graph import BudgetExceeded, Graph, bits

DEFAULT_CAP = 10**8

Edge = tuple[int, int]


def iter_cliques(g: Graph, m: int) -> Iterator[tuple[int, ...]]:
    """Every K_m as an increasing vertex tuple, each copy exactly once."""
    if m < 1:
        raise ValueError("clique order must be positive")
    if m == 1:
        yield from ((v,) for v in range(g.n))
        return
    adj = g.adj
    later = [a >> (v + 1) << (v + 1) for v, a in enumerate(adj)]

    def extend(prefix: tuple[int, ...], cand: int, need: int):
        if need == 1:
            for v in bits(cand):
                yield prefix + (v,)
            return
        if cand.bit_count() < need:
            return
        for v in bits(cand):
            yield from extend(prefix + (v,), cand & later[v], need - 1)

    for v in range(g.n):
        yield from extend((v,), later[v], m - 1)


@dataclass
class CliqueStats:
    m: int
    total: int
    per_edge: dict[Edge, int] = field(repr=False)
    sharing_pairs: int
    shared_copies: int

    @property
    def shared_fraction(self) -> float:
        """Fraction of K_m copies sharing an edge with another copy."""
        return self.shared_copies / self.total if self.total else 0.0


def count_cliques(g: Graph, m: int, cap: int = DEFAULT_CAP) -> CliqueStats:
    """Count K_m copies with per-edge multiplicities and edge-sharing pairs.

    A pair of distinct copies sharing s >= 2 vertices shares C(s, 2) edges;
    it is counted once, at the lexicographically first shared edge.
    """
    if m < 2:
        raise ValueError("count_cliques needs m >= 2")
    cliques: list[tuple[int, ...]] = []
    per_edge: dict[Edge, list[int]] = defaultdict(list)
    for idx, c in enumerate(iter_cliques(g, m)):
        if idx >= cap:
            raise BudgetExceeded(f"more than {cap} copies of K_{m}")
        cliques.append(c)
        for e in combinations(c, 2):
            per_edge[e].append(idx)

    sharing = 0
    shared = set()
    for e, ids in per_edge.items():
        if len(ids) < 2:
            continue
        shared.update(ids)
        if m == 3:
            sharing += comb(len(ids), 2)
            continue
        for a, b in combinations(ids, 2):
            common = sorted(set(cliques[a]) & set(cliques[b]))
            if (common[0], common[1]) == e:
                sharing += 1
    return CliqueStats(
        m=m,
        total=len(cliques),
        per_edge={e: len(ids) for e, ids in per_edge.items()},
        sharing_pairs=sharing,
        shared_copies=len(shared),
    )


def count_cliques_naive(g: Graph, m: int) -> int:
    """Reference count over all C(n, m) vertex subsets."""
    return sum(
        all(g.has_edge(u, v) for u, v in combinations(s, 2))
        for s in combinations(range(g.n), m)
    )


def clique_number(g: Graph) -> int:
    """Maximum clique size by branch and bound with a greedy-colouring bound."""
    if g.n == 0:
        return 0
    adj = g.adj
    best = 1

    def color_bound(cand: int) -> int:
        colors = 0
        rest = cand
        while rest:
            colors += 1
            avail = rest
            while avail:
                v = (avail & -avail).bit_length() - 1
                rest &= ~(1 << v)
                avail &= ~(1 << v) & ~adj[v]
        return colors

    def expand(size: int, cand: int):
        nonlocal best
        if not cand:
            best = max(best, size)
            return
        if size + color_bound(cand) <= best:
            return
        for v in bits(cand):
            if size + cand.bit_count() <= best:
                return
            expand(size + 1, cand & adj[v])
            cand &= ~(1 << v)

    expand(0, g.vertex_mask)
    return best


def second_moment_ratio(g: Graph, m: int) -> Fraction:
    """|E| * sum c_e^2 / (sum c_e)^2 with c_e the number of K_m copies on edge e.

    This is E[X^2]/E[X]^2 for X the K_m count on a uniformly random edge.
    """
    if g.edge_count == 0:
        raise ValueError("graph has no edges")
    stats = count_cliques(g, m)
    if stats.total == 0:
        raise ValueError(f"graph has no copy of K_{m}")
    s1 = sum(stats.per_edge.values())
    s2 = sum(c * c for c in stats.per_edge.values())
    return Fraction(g.edge_count * s2, s1 * s1)


def count_cliques_in(adj, m: int, cand: int) -> int:
    """Number of m-cliques inside the vertex mask ``cand`` of an adjacency bitset list."""
    if m == 0:
        return 1
    if m == 1:
        return cand.bit_count()
    if m == 2:
        return sum((adj[v] & cand).bit_count() for v in bits(cand)) // 2
    total = 0
    while cand.bit_count() >= m:
        v = cand.bit_length() - 1
        cand ^= 1 << v
        total += count_cliques_in(adj, m - 1, cand & adj[v])
    return total
