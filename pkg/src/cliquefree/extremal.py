"""H-free subgraphs with many K_m copies: containment, cleanup, exact and heuristic search."""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

import numpy as np

from .cliques import count_cliques_in, iter_cliques
from .density import m2
from .ensemble import trial_seed
from .graph import BudgetExceeded, Graph, bits, induced_subgraph

Edge = tuple[int, int]


class CopyLimitExceeded(BudgetExceeded):
    pass


# -- containment -----------------------------------------------------------


def _match_order(pattern: Graph) -> list[int]:
    """Pattern vertices so that each one has as many earlier neighbours as possible."""
    order: list[int] = []
    placed = 0
    rest = set(range(pattern.n))
    while rest:
        v = min(
            rest,
            key=lambda x: (-(pattern.adj[x] & placed).bit_count(), -pattern.degree(x), x),
        )
        order.append(v)
        placed |= 1 << v
        rest.discard(v)
    return order


def _embeddings(host_adj, host_deg, pattern: Graph) -> Iterator[tuple[int, ...]]:
    order = _match_order(pattern)
    earlier = [[w for w in order[:i] if pattern.has_edge(w, v)] for i, v in enumerate(order)]
    need = [pattern.degree(v) for v in order]
    everyone = (1 << len(host_adj)) - 1
    big = [0] * (pattern.n + 1)
    for deg in set(need):
        big[deg] = sum(1 << x for x, d in enumerate(host_deg) if d >= deg) if deg else everyone
    image = [0] * pattern.n

    def rec(i: int, used: int):
        if i == pattern.n:
            yield tuple(image)
            return
        cand = big[need[i]] & ~used
        for w in earlier[i]:
            cand &= host_adj[image[w]]
        for x in bits(cand):
            image[order[i]] = x
            yield from rec(i + 1, used | 1 << x)

    yield from rec(0, 0)


def find_embedding(g: Graph, pattern: Graph) -> tuple[int, ...] | None:
    """An injective map pattern -> g preserving edges (not necessarily induced), or None.

    Entry ``i`` of the result is the image of pattern vertex ``i``.
    """
    if pattern.n == 0:
        raise ValueError("pattern must be nonempty")
    if pattern.n > g.n or pattern.edge_count > g.edge_count:
        return None
    return next(_embeddings(g.adj, g.degrees(), pattern), None)


def contains(g: Graph, pattern: Graph) -> bool:
    return find_embedding(g, pattern) is not None


def _is_complete(pattern: Graph) -> bool:
    return pattern.edge_count == pattern.n * (pattern.n - 1) // 2


@dataclass(frozen=True, order=True)
class Copy:
    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]


def enumerate_copies(g: Graph, pattern: Graph, cap: int = 10**6) -> list[Copy]:
    """All copies of ``pattern`` in ``g``, distinct as edge sets, sorted."""
    if cap < 1:
        raise ValueError("cap must be positive")
    if pattern.n == 0:
        raise ValueError("pattern must be nonempty")
    out: list[Copy] = []
    if _is_complete(pattern):
        for c in iter_cliques(g, pattern.n):
            if len(out) >= cap:
                raise CopyLimitExceeded(f"more than {cap} copies")
            out.append(Copy(c, tuple(combinations(c, 2))))
        return out
    if pattern.n > g.n or pattern.edge_count > g.edge_count:
        return out
    seen: set[tuple] = set()
    p_edges = list(pattern.edges())
    for image in _embeddings(g.adj, g.degrees(), pattern):
        edges = tuple(sorted(tuple(sorted((image[a], image[b]))) for a, b in p_edges))
        key = (edges, tuple(sorted(image)))
        if key in seen:
            continue
        if len(seen) >= cap:
            raise CopyLimitExceeded(f"more than {cap} copies")
        seen.add(key)
    return sorted(Copy(v, e) for e, v in seen)


def naive_contains(g: Graph, pattern: Graph) -> bool:
    """Reference containment test over all injective maps."""
    from itertools import permutations

    p_edges = list(pattern.edges())
    return any(
        all(g.has_edge(img[a], img[b]) for a, b in p_edges)
        for img in permutations(range(g.n), pattern.n)
    )


# -- K_m cleanup -------------------------------------------------------------


def _cover(adj, m: int, u: int, v: int) -> int:
    """Number of K_m copies on the edge uv."""
    return count_cliques_in(adj, m - 2, adj[u] & adj[v])


def km_cleanup(g: Graph, m: int) -> Graph:
    """Delete edges lying in two or more K_m copies until none remain, then edges in none.

    The result is a fixed point in which every edge lies in exactly one K_m.
    """
    if m < 2:
        raise ValueError("km_cleanup needs m >= 2")
    while True:
        crowded = [(u, v) for u, v in g.edges() if _cover(g.adj, m, u, v) >= 2]
        if not crowded:
            break
        g = g.without_edges(crowded)
    idle = [(u, v) for u, v in g.edges() if _cover(g.adj, m, u, v) == 0]
    return g.without_edges(idle)


# -- results ---------------------------------------------------------------


@dataclass(frozen=True)
class ExtremalResult:
    method: str
    survivor: Graph
    clique_count: int
    h_free_certified: bool
    host_edges: int
    certificate: str = ""
    nodes: int = 0

    @property
    def surviving_edges(self) -> frozenset[Edge]:
        return self.survivor.edge_set()

    @property
    def is_lower_bound(self) -> bool:
        """Heuristic results only bound the optimum from below."""
        return self.method != "exact"

    def summary(self) -> str:
        return (
            f"method={self.method} clique_count={self.clique_count} "
            f"h_free_certified={str(self.h_free_certified).lower()} "
            f"edges_kept={self.survivor.edge_count}/{self.host_edges} "
            f"certificate={self.certificate}"
        )


def _count(adj, m: int) -> int:
    return count_cliques_in(adj, m, (1 << len(adj)) - 1)


# -- exact branch and bound --------------------------------------------------


def exact_max_hfree_cliques(
    host: Graph,
    h: Graph,
    m: int,
    *,
    max_nodes: int = 5_000_000,
    budget: float | None = None,
) -> ExtremalResult:
    """Maximum K_m count over H-free spanning subgraphs of ``host``.

    Search: find a copy of H in the current graph and branch on which of its
    not-yet-kept edges is deleted (the i-th branch deletes edge i and keeps
    edges 0..i-1).  A copy whose edges are all kept closes the branch.  The
    current K_m count bounds every completion from above.
    """
    if h.n == 0:
        raise ValueError("forbidden graph must be nonempty")
    end = None if budget is None else time.monotonic() + budget
    p_edges = list(h.edges())
    h_deg = h.degrees()
    best_count = -1
    best_adj: tuple[int, ...] = host.adj
    nodes = 0

    def first_copy(adj) -> list[Edge] | None:
        deg = [a.bit_count() for a in adj]
        if h.n > len(adj) or h.edge_count > sum(deg) // 2:
            return None
        if h_deg and max(h_deg) > max(deg, default=0):
            return None
        image = next(_embeddings(adj, deg, h), None)
        if image is None:
            return None
        return sorted(tuple(sorted((image[a], image[b]))) for a, b in p_edges)

    def drop(adj, e):
        u, v = e
        out = list(adj)
        out[u] &= ~(1 << v)
        out[v] &= ~(1 << u)
        return out

    def rec(adj, kept: frozenset):
        nonlocal best_count, best_adj, nodes
        nodes += 1
        if nodes > max_nodes:
            raise BudgetExceeded(f"exact search exceeded {max_nodes} nodes")
        if end is not None and nodes % 256 == 0 and time.monotonic() > end:
            raise BudgetExceeded("exact search time budget exhausted")
        count = _count(adj, m)
        if count <= best_count:
            return
        copy = first_copy(adj)
        if copy is None:
            best_count, best_adj = count, tuple(adj)
            return
        free = [e for e in copy if e not in kept]
        free.sort(key=lambda e: (_cover(adj, m, *e), e))
        fixed = set(kept)
        for e in free:
            rec(drop(adj, e), frozenset(fixed))
            fixed.add(e)

    rec(list(host.adj), frozenset())
    survivor = Graph(host.n, best_adj, host.labels)
    return ExtremalResult(
        method="exact",
        survivor=survivor,
        clique_count=best_count,
        h_free_certified=not contains(survivor, h),
        host_edges=host.edge_count,
        certificate="containment search",
        nodes=nodes,
    )


def exhaustive_max_hfree_cliques(host: Graph, h: Graph, m: int) -> int:
    """Reference optimum over all 2^|E| spanning subgraphs."""
    edges = list(host.edges())
    if len(edges) > 20:
        raise ValueError("exhaustive oracle is limited to 20 edges")
    best = 0
    for keep in range(1 << len(edges)):
        g = host.spanning_subgraph(e for i, e in enumerate(edges) if keep >> i & 1)
        if not contains(g, h):
            best = max(best, _count(g.adj, m))
    return best


# -- partite heuristic -------------------------------------------------------


def _crossing(host: Graph, part: list[int], masks: list[int]) -> list[int]:
    return [host.adj[v] & ~masks[part[v]] for v in range(host.n)]


def _local_search(host: Graph, m: int, part: list[int], parts: int) -> list[int]:
    masks = [0] * parts
    for v, p in enumerate(part):
        masks[p] |= 1 << v
    surv = _crossing(host, part, masks)
    improved = True
    while improved:
        improved = False
        for v in range(host.n):
            a = part[v]
            here = count_cliques_in(surv, m - 1, surv[v])
            best_gain, best_to = 0, a
            for b in range(parts):
                if b == a:
                    continue
                nbrs = host.adj[v] & ~masks[b]
                gain = count_cliques_in(surv, m - 1, nbrs) - here
                if gain > best_gain:
                    best_gain, best_to = gain, b
            if best_to == a:
                continue
            improved = True
            bit = 1 << v
            masks[a] &= ~bit
            masks[best_to] |= bit
            part[v] = best_to
            new = host.adj[v] & ~masks[best_to]
            for x in bits(surv[v] ^ new):
                surv[x] ^= bit
            surv[v] = new
    return part


def partite_heuristic(host: Graph, k: int, m: int, restarts: int = 1, seed: int = 0) -> ExtremalResult:
    """Best (k-1)-partite spanning subgraph found from random balanced starts.

    Each restart shuffles the vertices into k-1 near-equal parts and then
    moves single vertices while that increases the surviving K_m count.  The
    survivor is (k-1)-colourable, hence free of every H with chromatic
    number >= k; no containment search is run.
    """
    if k <= m:
        raise ValueError(f"partite heuristic needs k > m, got k={k}, m={m}")
    if restarts < 1:
        raise ValueError("restarts must be positive")
    parts = k - 1
    best = None
    for r in range(restarts):
        rng = np.random.Generator(np.random.Philox(key=trial_seed(seed, r)))
        part = [0] * host.n
        for i, v in enumerate(rng.permutation(host.n).tolist()):
            part[v] = i % parts
        part = _local_search(host, m, part, parts)
        masks = [0] * parts
        for v, p in enumerate(part):
            masks[p] |= 1 << v
        surv = _crossing(host, part, masks)
        count = _count(surv, m)
        if best is None or count > best[0]:
            best = (count, surv)
    survivor = Graph(host.n, tuple(best[1]), host.labels)
    return ExtremalResult(
        method="partite",
        survivor=survivor,
        clique_count=best[0],
        h_free_certified=True,
        host_edges=host.edge_count,
        certificate=f"{parts}-partite",
    )


# -- deletion heuristic ------------------------------------------------------


def densest_part(h: Graph) -> Graph:
    """The induced subgraph on the canonical m2 witness of ``h`` (``h`` itself if m2 is undefined)."""
    if h.n < 3 or h.edge_count < 2:
        return h
    return induced_subgraph(h, m2(h, pruned=h.n > 30).witness)


def deletion_heuristic(host: Graph, h: Graph, m: int, cap: int = 10**6) -> ExtremalResult:
    """Destroy every copy of the densest part H' of H by greedy edge deletion.

    Copies are visited in sorted order; for each copy still intact, the edge
    deleted is the one lying in the most intact copies, ties going to the
    edge in the fewest surviving K_m, then to the smallest edge.
    """
    if m < 2:
        raise ValueError("deletion heuristic needs m >= 2")
    hp = densest_part(h)
    copies = enumerate_copies(host, hp, cap)
    on_edge: dict[Edge, list[int]] = {}
    for i, c in enumerate(copies):
        for e in c.edges:
            on_edge.setdefault(e, []).append(i)
    cover = {e: len(ids) for e, ids in on_edge.items()}
    alive = [True] * len(copies)

    cliques = list(iter_cliques(host, m))
    km_on: dict[Edge, list[int]] = {}
    for i, c in enumerate(cliques):
        for e in combinations(c, 2):
            km_on.setdefault(e, []).append(i)
    km = {e: len(ids) for e, ids in km_on.items()}
    km_alive = [True] * len(cliques)

    deleted: list[Edge] = []
    for i, c in enumerate(copies):
        if not alive[i]:
            continue
        e = min(c.edges, key=lambda x: (-cover[x], km.get(x, 0), x))
        deleted.append(e)
        for j in on_edge[e]:
            if alive[j]:
                alive[j] = False
                for f in copies[j].edges:
                    cover[f] -= 1
        for j in km_on.get(e, ()):
            if km_alive[j]:
                km_alive[j] = False
                for f in combinations(cliques[j], 2):
                    km[f] -= 1

    survivor = host.without_edges(deleted)
    return ExtremalResult(
        method="delete",
        survivor=survivor,
        clique_count=sum(km_alive),
        h_free_certified=not contains(survivor, h),
        host_edges=host.edge_count,
        certificate="containment search",
    )
