"""Exact colouring: q-colourability with constraints, chromatic number, and
enumeration of constrained colourings of towers.

The decision procedure is DSATUR-ordered backtracking with forward checking
and conflict-directed backjumping; every backjump also records its conflict
set as a nogood, so identical boundary situations are refuted once.  Colour
symmetry is broken by fixing the first chosen vertex to colour 0 (only when
no colours are pinned by the caller).  Equality constraints are handled by contracting the vertex classes
first, so the solver itself only ever sees a plain graph.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Mapping

from .cliques import clique_number
from .construct import tower, tower_vertex
from .graph import BudgetExceeded, Graph, bits


@dataclass(frozen=True)
class Coloring:
    assignment: tuple[int, ...]
    q: int

    def is_proper(self, g: Graph) -> bool:
        return len(self.assignment) == g.n and all(
            0 <= c < self.q for c in self.assignment
        ) and all(self.assignment[u] != self.assignment[v] for u, v in g.edges())

    @property
    def colors_used(self) -> int:
        return len(set(self.assignment))


class _Deadline:
    def __init__(self, seconds: float | None):
        self.end = None if seconds is None else time.monotonic() + seconds
        self.ticks = 0

    def check(self):
        self.ticks += 1
        if self.end is not None and self.ticks % 1024 == 0 and time.monotonic() > self.end:
            raise BudgetExceeded("colouring time budget exhausted")


def _contract(g: Graph, equal: Iterable[tuple[int, int]]):
    """Union-find contraction; returns (quotient adjacency lists, class of each vertex) or None."""
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, w in equal:
        if not (0 <= u < g.n and 0 <= w < g.n):
            raise ValueError(f"constraint ({u}, {w}) references a missing vertex")
        ru, rw = find(u), find(w)
        if ru != rw:
            parent[max(ru, rw)] = min(ru, rw)
    roots = sorted({find(v) for v in range(g.n)})
    index = {r: i for i, r in enumerate(roots)}
    cls = [index[find(v)] for v in range(g.n)]
    nbrs: list[set[int]] = [set() for _ in roots]
    for u, v in g.edges():
        a, b = cls[u], cls[v]
        if a == b:
            return None
        nbrs[a].add(b)
        nbrs[b].add(a)
    return [sorted(s) for s in nbrs], cls


MAX_NOGOOD = 40


def _violated_nogood(candidates, color, v):
    for ng in candidates:
        if all(x == v or color[x] == cx for x, cx in ng):
            return [x for x, _ in ng if x != v]
    return None


def _solve(nbrs: list[list[int]], q: int, pinned: dict[int, int], deadline: _Deadline):
    n = len(nbrs)
    full = (1 << q) - 1
    dom = [full] * n
    for v, c in pinned.items():
        dom[v] = 1 << c
    for v, c in pinned.items():
        for x in nbrs[v]:
            if x not in pinned:
                dom[x] &= ~(1 << c)
                if not dom[x]:
                    return None
    color = [-1] * n
    for v, c in pinned.items():
        color[v] = c
    degree = [len(a) for a in nbrs]
    free = [v for v in range(n) if v not in pinned]
    if not free:
        return color

    reductions: dict[int, list[int]] = {}
    past_fc: list[list[int]] = [[] for _ in range(n)]
    conf: dict[int, set[int]] = {}
    cand: dict[int, int] = {}
    stack: list[int] = []
    depth: dict[int, int] = {}
    unassigned = set(free)
    break_symmetry = not pinned
    nogoods: dict[tuple[int, int], list[tuple[tuple[int, int], ...]]] = {}

    def select() -> int:
        return min(unassigned, key=lambda v: (dom[v].bit_count(), -degree[v], v))

    def undo(v: int):
        bit = 1 << color[v]
        for x in reductions.pop(v, ()):
            dom[x] |= bit
            past_fc[x].pop()
        color[v] = -1

    v = select()
    unassigned.discard(v)
    cand[v] = 1 if break_symmetry else dom[v]
    conf[v] = set()
    while True:
        deadline.check()
        if cand[v]:
            low = cand[v] & -cand[v]
            cand[v] ^= low
            c = low.bit_length() - 1
            blocked = _violated_nogood(nogoods.get((v, c), ()), color, v)
            if blocked is not None:
                conf[v].update(blocked)
                continue
            color[v] = c
            pruned = []
            wipe = None
            for x in nbrs[v]:
                if color[x] == -1 and dom[x] & low:
                    dom[x] ^= low
                    pruned.append(x)
                    past_fc[x].append(v)
                    if not dom[x]:
                        wipe = x
                        break
            reductions[v] = pruned
            if wipe is None:
                depth[v] = len(stack)
                stack.append(v)
                if not unassigned:
                    return color
                v = select()
                unassigned.discard(v)
                cand[v] = dom[v]
                conf[v] = set()
            else:
                undo(v)
                conf[v].update(past_fc[wipe])
            continue

        conflict = conf[v] | set(past_fc[v])
        conflict.discard(v)
        if not conflict:
            return None
        if len(conflict) <= MAX_NOGOOD:
            ng = tuple((x, color[x]) for x in conflict)
            for lit in ng:
                nogoods.setdefault(lit, []).append(ng)
        h = max(conflict, key=depth.__getitem__)
        unassigned.add(v)
        while stack[-1] != h:
            w = stack.pop()
            undo(w)
            unassigned.add(w)
        stack.pop()
        undo(h)
        conflict.discard(h)
        conf[h] |= conflict
        v = h


def is_q_colorable(
    g: Graph,
    q: int,
    equal: Iterable[tuple[int, int]] = (),
    fixed: Mapping[int, int] | None = None,
    budget: float | None = None,
) -> Coloring | None:
    """A proper q-colouring honouring the constraints, or None if none exists.

    ``equal`` lists vertex pairs forced to share a colour; ``fixed`` pins
    vertices to colours.  ``budget`` is a wall-clock limit in seconds; running
    out raises :class:`BudgetExceeded` rather than returning a guess.
    """
    if q < 1:
        if g.n == 0:
            return Coloring((), q)
        raise ValueError("q must be positive")
    contracted = _contract(g, equal)
    if contracted is None:
        return None
    nbrs, cls = contracted
    pinned: dict[int, int] = {}
    for v, c in (fixed or {}).items():
        if not 0 <= c < q:
            return None
        if pinned.setdefault(cls[v], c) != c:
            return None
    for a, c in pinned.items():
        if any(pinned.get(b) == c for b in nbrs[a]):
            return None
    color = _solve(nbrs, q, pinned, _Deadline(budget))
    if color is None:
        return None
    return Coloring(tuple(color[cls[v]] for v in range(g.n)), q)


def greedy_coloring(g: Graph) -> Coloring:
    """Plain DSATUR greedy colouring (upper bound)."""
    color = [-1] * g.n
    seen = [0] * g.n
    remaining = set(range(g.n))
    degree = g.degrees()
    while remaining:
        v = min(remaining, key=lambda x: (-seen[x].bit_count(), -degree[x], x))
        c = (~seen[v] & (seen[v] + 1)).bit_length() - 1
        color[v] = c
        remaining.discard(v)
        for x in bits(g.adj[v]):
            seen[x] |= 1 << c
    q = max(color, default=-1) + 1
    return Coloring(tuple(color), q)


def minimum_coloring(g: Graph, budget: float | None = None) -> Coloring:
    if g.n == 0:
        return Coloring((), 0)
    upper = greedy_coloring(g)
    lower = clique_number(g)
    deadline = None if budget is None else time.monotonic() + budget
    for q in range(lower, upper.q):
        left = None if deadline is None else max(0.0, deadline - time.monotonic())
        found = is_q_colorable(g, q, budget=left)
        if found is not None:
            return found
    return upper


def chromatic_number(g: Graph, budget: float | None = None) -> int:
    return minimum_coloring(g, budget).q


def iter_colorings(
    g: Graph, q: int, equal: Iterable[tuple[int, int]] = ()
) -> Iterator[tuple[int, ...]]:
    """Every proper q-colouring (no symmetry reduction) satisfying ``equal``."""
    contracted = _contract(g, equal)
    if contracted is None:
        return
    nbrs, cls = contracted
    n = len(nbrs)
    color = [-1] * n

    def rec(v: int):
        if v == n:
            yield tuple(color[cls[x]] for x in range(g.n))
            return
        used = {color[x] for x in nbrs[v] if x < v}
        for c in range(q):
            if c not in used:
                color[v] = c
                yield from rec(v + 1)
        color[v] = -1

    yield from rec(0)


def forced_pairs_under_base_equality(k: int, t: int, cap: int = 10**8) -> list[tuple[int, int]] | None:
    """Vertex pairs of the (k, t)-tower equal in every (k-1)-colouring with f(v00) = f(v01).

    Returns None when no such colouring exists.
    """
    g = tower(k, t)
    if g.n > 14 and (k - 1) ** g.n > cap:
        raise BudgetExceeded(f"tower({k},{t}) is too large to enumerate colourings")
    base = (tower_vertex(k, 0, 0), tower_vertex(k, 0, 1))
    forced: set[tuple[int, int]] | None = None
    for count, f in enumerate(iter_colorings(g, k - 1, [base]), start=1):
        if count > cap:
            raise BudgetExceeded(f"more than {cap} constrained colourings")
        same = {(u, w) for u, w in combinations(range(g.n), 2) if f[u] == f[w]}
        forced = same if forced is None else forced & same
    return None if forced is None else sorted(forced)
