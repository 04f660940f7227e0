"""Exhaustive sweeps over every vertex subset with incremental edge counts.

The universe is split into a low part of at most ``LOW_BITS`` vertices, whose
``2**L`` subsets form one numpy block, and a high part walked in Gray-code
order.  Each Gray step adds or removes one high vertex ``u``; the per-block
cross-edge counts change by ``popcount(N(u) & low_subset)``, a precomputed
vector, so a step costs one vector add rather than a recount.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .graph import EXHAUSTIVE_CAP, Graph

LOW_BITS = 20


@dataclass
class SubsetBlock:
    """All subsets ``low | high_mask`` for one fixed high part.

    ``masks``, ``sizes`` and ``edges`` are aligned arrays indexed by the low
    subset; ``masks`` holds global vertex bitmasks.
    """

    high_mask: int
    masks: np.ndarray
    sizes: np.ndarray
    edges: np.ndarray


def _popcount(a: np.ndarray) -> np.ndarray:
    return np.bitwise_count(a)


class SubsetSweep:
    def __init__(self, g: Graph, universe: Sequence[int] | None = None, low_bits: int = LOW_BITS):
        verts = list(range(g.n)) if universe is None else sorted(set(universe))
        if len(verts) > EXHAUSTIVE_CAP:
            raise ValueError(
                f"exhaustive sweep over {len(verts)} vertices exceeds cap {EXHAUSTIVE_CAP}"
            )
        self.g = g
        self.vertices = verts
        n_low = min(len(verts), low_bits)
        self.low = verts[:n_low]
        self.high = verts[n_low:]
        self._prepare()

    @property
    def total(self) -> int:
        return 1 << len(self.vertices)

    def _local(self, mask: int, part: Sequence[int]) -> int:
        out = 0
        for i, v in enumerate(part):
            if mask >> v & 1:
                out |= 1 << i
        return out

    def _prepare(self):
        g, low, high = self.g, self.low, self.high
        size = 1 << len(low)
        idx = np.arange(size, dtype=np.uint32)

        edges = np.zeros(size, dtype=np.uint16)
        masks = np.zeros(size, dtype=np.uint64)
        for b, v in enumerate(low):
            half = 1 << b
            nb = np.uint32(self._local(g.adj[v], low) & (half - 1))
            edges[half : 2 * half] = edges[:half] + _popcount(idx[:half] & nb)
            masks[half : 2 * half] = masks[:half] | np.uint64(1 << v)
        self.low_edges = edges
        self.low_masks = masks
        self.low_sizes = _popcount(idx).astype(np.uint8)

        self.cross = [
            _popcount(idx & np.uint32(self._local(g.adj[u], low))).astype(np.uint16)
            for u in high
        ]
        self.high_adj = [self._local(g.adj[u], high) for u in high]

    def _high_global(self, h: int) -> int:
        out = 0
        for i, v in enumerate(self.high):
            if h >> i & 1:
                out |= 1 << v
        return out

    def _block(self, h: int, cross: np.ndarray, e_high: int) -> SubsetBlock:
        hg = self._high_global(h)
        return SubsetBlock(
            high_mask=hg,
            masks=self.low_masks | np.uint64(hg),
            sizes=self.low_sizes + np.uint8(h.bit_count()),
            edges=self.low_edges + cross + np.uint16(e_high),
        )

    def block_at(self, high_mask: int) -> SubsetBlock:
        """Recompute the block for a given global high mask directly."""
        h = self._local(high_mask, self.high)
        cross = np.zeros_like(self.low_edges)
        e_high = 0
        for i in range(len(self.high)):
            if h >> i & 1:
                cross = cross + self.cross[i]
                e_high += (self.high_adj[i] & h).bit_count()
        return self._block(h, cross, e_high // 2)

    def __iter__(self) -> Iterator[SubsetBlock]:
        cross = np.zeros_like(self.low_edges)
        h = 0
        e_high = 0
        yield self._block(h, cross, e_high)
        for step in range(1, 1 << len(self.high)):
            i = (step & -step).bit_length() - 1
            bit = 1 << i
            if h & bit:
                h ^= bit
                e_high -= (self.high_adj[i] & h).bit_count()
                cross -= self.cross[i]
            else:
                e_high += (self.high_adj[i] & h).bit_count()
                h ^= bit
                cross += self.cross[i]
            yield self._block(h, cross, e_high)


def first_by_size_then_mask(block: SubsetBlock, selected: np.ndarray) -> tuple[int, int] | None:
    """Smallest ``(size, mask)`` among the selected entries of a block."""
    if not selected.any():
        return None
    sizes = block.sizes[selected]
    smallest = sizes.min()
    mask = block.masks[selected][sizes == smallest].min()
    return int(smallest), int(mask)
