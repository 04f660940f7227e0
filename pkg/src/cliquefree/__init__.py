"""Exact 2-density, sparse k-chromatic constructions, G(n, p) clique statistics
and H-free clique maximisation."""

from .cliques import CliqueStats, clique_number, count_cliques, second_moment_ratio
from .coloring import Coloring, chromatic_number, forced_pairs_under_base_equality, is_q_colorable
from .construct import (
    ConstructionParams,
    bridge,
    sparse_k_chromatic,
    supercomplex,
    tower,
    tower_complex,
)
from .density import DensityReport, LemmaCheck, d2_density, m2, potential, verify_potential_lemma
from .ensemble import (
    EnsembleConfig,
    concentration_report,
    critical_exponents,
    expected_clique_count,
    sample_gnp,
)
from .extremal import (
    ExtremalResult,
    contains,
    deletion_heuristic,
    enumerate_copies,
    exact_max_hfree_cliques,
    km_cleanup,
    partite_heuristic,
)
from .graph import (
    BudgetExceeded,
    EdgeListError,
    Graph,
    LabelKind,
    StructuredLabel,
    complete_graph,
    complete_multipartite,
    cycle,
    induced_subgraph,
    read_edge_list,
    write_edge_list,
)
from .harness import SweepConfig, SweepRow, run_sweep, witness_trend

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
