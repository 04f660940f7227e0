"""Named potential checks on the construction objects.

``cl1``: every A in the tower with |A| >= 2 has potential at least the
general threshold, and at least the base threshold when A contains the base.
``cl2``: the same for the tower complex.
``cl3``: sets of the supercomplex avoiding the base, general threshold only.
``cl4``: sets of the supercomplex with |A| <= t + 1, both thresholds.
"""

from __future__ import annotations

from .construct import supercomplex, tower, tower_complex, tower_vertex
from .density import LemmaCheck, potential_thresholds, verify_potential_lemma
from .graph import Graph

LEMMAS = ("cl1", "cl2", "cl3", "cl4")
BASE = (0, 1)


def lemma_graph(lemma: str, k: int, t: int) -> Graph:
    if lemma == "cl1":
        return tower(k, t)
    if lemma == "cl2":
        return tower_complex(k, t)
    if lemma in ("cl3", "cl4"):
        return supercomplex(k, t)
    raise ValueError(f"unknown lemma {lemma!r}; expected one of {LEMMAS}")


def check_lemma(lemma: str, k: int, t: int) -> LemmaCheck:
    g = lemma_graph(lemma, k, t)
    general, base = potential_thresholds(k)
    if lemma == "cl3":
        return verify_potential_lemma(g, k, general, universe=range(2, g.n))
    if lemma == "cl4":
        return verify_potential_lemma(g, k, general, base, BASE, max_size=t + 1)
    return verify_potential_lemma(g, k, general, base, BASE)


def mutated_tower(k: int = 4) -> Graph:
    """tower(k, 1) with the missing level-1 edge v10 v11 put back (a negative control)."""
    return tower(k, 1).with_edges([(tower_vertex(k, 1, 0), tower_vertex(k, 1, 1))])


def check_mutated_tower(k: int = 4) -> LemmaCheck:
    general, base = potential_thresholds(k)
    return verify_potential_lemma(mutated_tower(k), k, general, base, BASE)
