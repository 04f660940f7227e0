"""Towers, tower complexes, bridges, supercomplexes and sparse k-chromatic graphs.

Canonical vertex numbering: the two base vertices first (``v_{0,0}`` = 0,
``v_{0,1}`` = 1), then towers in index order, levels ascending, positions
ascending.  In the final graph the ``k`` skeleton vertices come first and each
skeleton edge ``uv`` (lexicographic order) contributes the non-base vertices
of its supercomplex copy, with ``v_{0,0} -> u`` and ``v_{0,1} -> v``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import ceil, comb

from .graph import Graph, LabelKind, StructuredLabel


@dataclass(frozen=True)
class ConstructionParams:
    k: int
    t: int
    epsilon: Fraction | None = None

    def __post_init__(self):
        _check(self.k, self.t)
        if self.epsilon is not None and self.t != t_for_epsilon(self.k, self.epsilon):
            raise ValueError("t must equal ceil(k^3 / epsilon) when epsilon is given")

    @classmethod
    def from_epsilon(cls, k: int, epsilon) -> ConstructionParams:
        eps = Fraction(epsilon)
        return cls(k, t_for_epsilon(k, eps), eps)


def t_for_epsilon(k: int, epsilon) -> int:
    eps = Fraction(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    return ceil(Fraction(k**3) / eps)


def _check(k: int, t: int = 1):
    if k < 4:
        raise ValueError(f"constructions need k >= 4, got k={k}")
    if t < 1:
        raise ValueError(f"tower height must be >= 1, got t={t}")


def tower_size(k: int, t: int) -> int:
    return 2 + t * (k - 1)


def tower_vertex(k: int, i: int, j: int, tower: int = 1, t: int | None = None) -> int:
    """Id of ``v_{i,j}`` (of tower ``tower`` when inside a complex of height ``t``)."""
    if i == 0:
        return j
    offset = 0 if tower == 1 else (tower - 1) * t * (k - 1)
    return 2 + offset + (i - 1) * (k - 1) + j


def _level_edges(k: int, t: int, first: int) -> list[tuple[int, int]]:
    """Edges of one tower whose level-1.. vertices start at id ``first``."""

    def vid(i: int, j: int) -> int:
        return j if i == 0 else first + (i - 1) * (k - 1) + j

    edges = []
    low_cut = Fraction(k - 2, 2)
    high_cut = Fraction(k - 1, 2)
    for i in range(1, t + 1):
        for a, b in combinations(range(k - 1), 2):
            if (a, b) != (0, 1):
                edges.append((vid(i, a), vid(i, b)))
        for j in range(k - 1):
            if j <= low_cut:
                edges.append((vid(i - 1, 0), vid(i, j)))
            if j >= high_cut:
                edges.append((vid(i - 1, 1), vid(i, j)))
    return edges


def _tower_labels(k: int, t: int, tower: int | None) -> list[StructuredLabel]:
    return [
        StructuredLabel(LabelKind.TOWER, level=i, position=j, tower=tower)
        for i in range(1, t + 1)
        for j in range(k - 1)
    ]


def _base_labels() -> list[StructuredLabel]:
    return [StructuredLabel(LabelKind.BASE, 0, 0), StructuredLabel(LabelKind.BASE, 0, 1)]


def tower(k: int, t: int) -> Graph:
    """The (k, t)-tower: base pair plus ``t`` levels each inducing K_{k-1} - e."""
    _check(k, t)
    return Graph.from_edges(
        tower_size(k, t), _level_edges(k, t, 2), _base_labels() + _tower_labels(k, t, None)
    )


def tower_complex(k: int, t: int) -> Graph:
    """``k`` towers sharing their base and nothing else."""
    _check(k, t)
    per = t * (k - 1)
    edges: list[tuple[int, int]] = []
    labels = _base_labels()
    for r in range(1, k + 1):
        edges += _level_edges(k, t, 2 + (r - 1) * per)
        labels += _tower_labels(k, t, r)
    return Graph.from_edges(2 + k * per, edges, labels)


TopVertex = tuple[int, int]  # (tower index 1..k, side 0 or 1) for v^tower_{t,side}


def bridge(k: int) -> list[tuple[TopVertex, TopVertex]]:
    """Edges of the bridge graph between the towers' top special vertices.

    For towers i < j: ``v^i_{t,0} v^j_{t,1}`` when j - i <= k/2, otherwise
    ``v^i_{t,1} v^j_{t,0}``.
    """
    _check(k)
    out = []
    for i, j in combinations(range(1, k + 1), 2):
        if Fraction(j - i) <= Fraction(k, 2):
            out.append(((i, 0), (j, 1)))
        else:
            out.append(((i, 1), (j, 0)))
    return out


def bridge_graph(k: int) -> Graph:
    """The bridge as a standalone bipartite graph; vertex 2(i-1)+side is v^i_{t,side}."""
    vid = lambda tv: 2 * (tv[0] - 1) + tv[1]  # noqa: E731
    labels = [
        StructuredLabel(LabelKind.BRIDGE_SIDE, position=side, tower=i)
        for i in range(1, k + 1)
        for side in (0, 1)
    ]
    return Graph.from_edges(2 * k, [(vid(a), vid(b)) for a, b in bridge(k)], labels)


def supercomplex(k: int, t: int) -> Graph:
    """Tower complex plus the bridge edges on the level-t vertices."""
    c = tower_complex(k, t)
    extra = [
        (tower_vertex(k, t, a[1], a[0], t), tower_vertex(k, t, b[1], b[0], t))
        for a, b in bridge(k)
    ]
    return c.with_edges(extra)


def sparse_k_chromatic(k: int, t: int, epsilon=None) -> Graph:
    """K_k with every edge ``uv`` replaced by a supercomplex with base {u, v}.

    When ``epsilon`` is given and ``t`` is below ceil(k^3/epsilon) a warning is
    issued: the 2-density bound for that epsilon needs the full height.
    """
    _check(k, t)
    if epsilon is not None and t < t_for_epsilon(k, epsilon):
        warnings.warn(
            f"t={t} < ceil(k^3/epsilon)={t_for_epsilon(k, epsilon)}; "
            "the 2-density guarantee for this epsilon needs the full height",
            stacklevel=2,
        )
    s = supercomplex(k, t)
    inner = s.n - 2
    labels = [StructuredLabel(LabelKind.CLIQUE_ORIGIN, position=u) for u in range(k)]
    edges = []
    for c, (u, v) in enumerate(combinations(range(k), 2)):
        offset = k + c * inner

        def place(x: int) -> int:
            return (u, v)[x] if x < 2 else offset + x - 2

        edges += [(place(a), place(b)) for a, b in s.edges()]
        labels += [
            StructuredLabel(lab.kind, lab.level, lab.position, lab.tower, (u, v))
            for lab in s.labels[2:]
        ]
    return Graph.from_edges(k + comb(k, 2) * inner, edges, labels)


def g_k_epsilon(k: int, epsilon) -> Graph:
    params = ConstructionParams.from_epsilon(k, epsilon)
    return sparse_k_chromatic(params.k, params.t)


# closed forms, used by tests and the CLI summary


def tower_edge_count(k: int, t: int) -> int:
    return t * (k + 1) * (k - 2) // 2


def supercomplex_edge_count(k: int, t: int) -> int:
    return k * tower_edge_count(k, t) + comb(k, 2)


def sparse_k_chromatic_size(k: int, t: int) -> tuple[int, int]:
    return k + comb(k, 2) * k * (k - 1) * t, comb(k, 2) * supercomplex_edge_count(k, t)
