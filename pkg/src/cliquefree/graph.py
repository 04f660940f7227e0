"""Immutable simple graphs over dense vertex ids with bitset adjacency.

Vertex ``v`` of a graph on ``n`` vertices has its neighbourhood stored as a
Python ``int`` whose bit ``u`` is set iff ``uv`` is an edge.  Vertex sets are
passed around either as such bitmasks or as iterables of ids.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_VERTICES = 10_000
EXHAUSTIVE_CAP = 30


class BudgetExceeded(RuntimeError):
    """A configured enumeration cap or time budget was hit."""


class EdgeListError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class LabelKind(str, enum.Enum):
    BASE = "Base"
    TOWER = "Tower"
    BRIDGE_SIDE = "BridgeSide"
    CLIQUE_ORIGIN = "CliqueOrigin"


@dataclass(frozen=True)
class StructuredLabel:
    """Where a vertex came from in one of the layered constructions.

    ``level``/``position`` are the (i, j) of ``v_{i,j}``; ``tower`` is the tower
    index inside a complex (1-based); ``copy`` names the skeleton edge whose
    supercomplex the vertex belongs to in the final graph.  Skeleton vertices
    of the final graph are ``CliqueOrigin`` with ``position`` = skeleton index.
    """

    kind: LabelKind
    level: int = 0
    position: int = 0
    tower: int | None = None
    copy: tuple[int, int] | None = None

    def __post_init__(self):
        if self.kind is LabelKind.BASE and (self.level != 0 or self.position not in (0, 1)):
            raise ValueError(f"base label must be v_(0,0) or v_(0,1), got {self}")
        if self.level < 0 or self.position < 0:
            raise ValueError("level and position must be nonnegative")

    def __str__(self) -> str:
        parts = [self.kind.value, f"level={self.level}", f"position={self.position}"]
        if self.tower is not None:
            parts.append(f"tower={self.tower}")
        if self.copy is not None:
            parts.append(f"copy={self.copy[0]}-{self.copy[1]}")
        return " ".join(parts)

    @classmethod
    def parse(cls, text: str) -> StructuredLabel:
        kind, *fields = text.split()
        kw: dict = {}
        for field in fields:
            key, _, value = field.partition("=")
            if key in ("level", "position", "tower"):
                kw[key] = int(value)
            elif key == "copy":
                a, b = value.split("-")
                kw[key] = (int(a), int(b))
            else:
                raise ValueError(f"unknown label field {key!r}")
        return cls(LabelKind(kind), **kw)


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int] | int) -> int:
    if isinstance(vertices, (int, np.integer)):
        return int(vertices)
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]
    labels: tuple[StructuredLabel, ...] | None = None

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count {self.n} outside [0, {MAX_VERTICES}]")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("labels must cover every vertex exactly once")

    # -- construction -----------------------------------------------------

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        labels: Sequence[StructuredLabel] | None = None,
        *,
        strict: bool = False,
    ) -> Graph:
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if strict and adj[u] >> v & 1:
                raise ValueError(f"duplicate edge ({u}, {v})")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj), None if labels is None else tuple(labels))

    @classmethod
    def from_adjacency_matrix(cls, matrix: np.ndarray, labels=None) -> Graph:
        matrix = np.asarray(matrix, dtype=bool)
        n = matrix.shape[0]
        if matrix.shape != (n, n):
            raise ValueError("adjacency matrix must be square")
        if matrix.diagonal().any():
            raise ValueError("adjacency matrix has self-loops")
        if not (matrix == matrix.T).all():
            raise ValueError("adjacency matrix is not symmetric")
        packed = np.packbits(matrix, axis=1, bitorder="little")
        adj = tuple(int.from_bytes(row.tobytes(), "little") for row in packed)
        return cls(n, adj, None if labels is None else tuple(labels))

    # -- queries ----------------------------------------------------------

    @cached_property
    def edge_count(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self.adj]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u, a in enumerate(self.adj):
            yield from ((u, v) for v in bits(a >> (u + 1) << (u + 1)))

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges())

    def edges_within(self, vertices: Iterable[int] | int) -> int:
        mask = to_mask(vertices)
        return sum((self.adj[v] & mask).bit_count() for v in bits(mask)) // 2

    def vertex_of(self, label: StructuredLabel) -> int:
        if self.labels is None:
            raise KeyError("graph carries no labels")
        return self._label_index[label]

    @cached_property
    def _label_index(self) -> dict[StructuredLabel, int]:
        return {lab: v for v, lab in enumerate(self.labels or ())}

    def adjacency_matrix(self) -> np.ndarray:
        out = np.zeros((self.n, self.n), dtype=bool)
        for u, v in self.edges():
            out[u, v] = out[v, u] = True
        return out

    # -- derived graphs ---------------------------------------------------

    def without_edges(self, edges: Iterable[tuple[int, int]]) -> Graph:
        adj = list(self.adj)
        for u, v in edges:
            adj[u] &= ~(1 << v)
            adj[v] &= ~(1 << u)
        return Graph(self.n, tuple(adj), self.labels)

    def with_edges(self, edges: Iterable[tuple[int, int]]) -> Graph:
        adj = list(self.adj)
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return Graph(self.n, tuple(adj), self.labels)

    def spanning_subgraph(self, edges: Iterable[tuple[int, int]]) -> Graph:
        """Same vertex set, only the given edges (which must be edges of self)."""
        adj = [0] * self.n
        for u, v in edges:
            if not self.has_edge(u, v):
                raise ValueError(f"({u}, {v}) is not an edge of the host")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return Graph(self.n, tuple(adj), self.labels)


def induced_subgraph(g: Graph, s: Iterable[int] | int) -> Graph:
    """``g[s]`` with vertices renumbered in increasing order of their old ids."""
    mask = to_mask(s)
    if mask >> g.n:
        raise ValueError(f"vertex set reaches outside [0, {g.n})")
    keep = list(bits(mask))
    index = {v: i for i, v in enumerate(keep)}
    adj = []
    for v in keep:
        row = 0
        for u in bits(g.adj[v] & mask):
            row |= 1 << index[u]
        adj.append(row)
    labels = None if g.labels is None else tuple(g.labels[v] for v in keep)
    return Graph(len(keep), tuple(adj), labels)


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for h in graphs:
        edges.extend((u + offset, v + offset) for u, v in h.edges())
        offset += h.n
    return Graph.from_edges(offset, edges)


def join(a: Graph, b: Graph) -> Graph:
    """Disjoint union plus every edge between the two sides."""
    g = disjoint_union(a, b)
    return g.with_edges((u, a.n + v) for u in range(a.n) for v in range(b.n))


# -- standard graphs ------------------------------------------------------


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_graph(m: int) -> Graph:
    if m < 1:
        raise ValueError("complete_graph needs m >= 1")
    full = (1 << m) - 1
    return Graph(m, tuple(full ^ (1 << v) for v in range(m)))


def complete_multipartite(sizes: Sequence[int]) -> Graph:
    if not sizes or any(s < 0 for s in sizes):
        raise ValueError("sizes must be a nonempty list of nonnegative ints")
    n = sum(sizes)
    full = (1 << n) - 1
    adj = []
    start = 0
    for s in sizes:
        part = ((1 << s) - 1) << start
        adj.extend([full & ~part] * s)
        start += s
    return Graph(n, tuple(adj))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    """Path on ``n`` vertices (``n - 1`` edges)."""
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def wheel(rim: int) -> Graph:
    """Hub vertex 0 joined to a cycle on vertices 1..rim."""
    return join(empty_graph(1), cycle(rim))


def moser_spindle() -> Graph:
    return Graph.from_edges(
        7,
        [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3),
         (0, 4), (0, 5), (4, 5), (4, 6), (5, 6), (3, 6)],
    )


def mycielski(g: Graph) -> Graph:
    """Mycielskian of ``g``: raises the chromatic number by one, keeps triangle-freeness."""
    n = g.n
    edges = list(g.edges())
    for u, v in g.edges():
        edges += [(u, n + v), (v, n + u)]
    edges += [(n + v, 2 * n) for v in range(n)]
    return Graph.from_edges(2 * n + 1, edges)


def grotzsch() -> Graph:
    return mycielski(cycle(5))


def naive_edge_count(g: Graph, s: Iterable[int]) -> int:
    """Reference edge count of ``g[s]`` by checking every pair."""
    return sum(g.has_edge(u, v) for u, v in combinations(sorted(s), 2))


# -- edge-list text format ------------------------------------------------

_EDGE_RE = re.compile(r"^\s*(\d+)\s+(\d+)\s*$")


def read_edge_list(text: str, labels_text: str | None = None) -> Graph:
    """Parse the edge-list format: vertex count, then one ``u v`` per line.

    Blank lines and lines starting with ``#`` are ignored.
    """
    n = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if n is None:
            if not line.strip().isdigit():
                raise EdgeListError(lineno, f"expected vertex count, got {line!r}")
            n = int(line)
            if n > MAX_VERTICES:
                raise EdgeListError(lineno, f"vertex count {n} exceeds cap {MAX_VERTICES}")
            continue
        match = _EDGE_RE.match(line)
        if not match:
            raise EdgeListError(lineno, f"malformed edge line {line!r}")
        u, v = int(match[1]), int(match[2])
        if u == v:
            raise EdgeListError(lineno, f"self-loop at vertex {u}")
        if max(u, v) >= n:
            raise EdgeListError(lineno, f"vertex id {max(u, v)} >= n={n}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise EdgeListError(lineno, f"duplicate edge {key}")
        seen.add(key)
        edges.append(key)
    if n is None:
        raise EdgeListError(1, "missing vertex count")
    labels = None if labels_text is None else read_labels(labels_text, n)
    return Graph.from_edges(n, edges, labels)


def write_edge_list(g: Graph) -> str:
    return "\n".join([str(g.n), *(f"{u} {v}" for u, v in g.edges())])


def read_labels(text: str, n: int) -> tuple[StructuredLabel, ...]:
    found: dict[int, StructuredLabel] = {}
    for lineno, line in enumerate(text.split("\n"), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        vid, _, body = line.partition("\t")
        try:
            v = int(vid)
            label = StructuredLabel.parse(body)
        except ValueError as exc:
            raise EdgeListError(lineno, str(exc)) from None
        if not 0 <= v < n or v in found:
            raise EdgeListError(lineno, f"bad or repeated vertex id {v}")
        found[v] = label
    if len(found) != n:
        raise EdgeListError(0, f"labels cover {len(found)} of {n} vertices")
    return tuple(found[v] for v in range(n))


def write_labels(g: Graph) -> str:
    if g.labels is None:
        raise ValueError("graph carries no labels")
    return "\n".join(f"{v}\t{lab}" for v, lab in enumerate(g.labels))
