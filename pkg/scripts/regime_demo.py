"""Where the threshold of H sits relative to K_m, for a few forbidden graphs.

For each pair prints m2(H), m2(K_m), the exponents a with p = n^-a, and
the triangle count that a single G(n, n^-a) sample keeps under both
heuristics on either side of the H threshold.
"""

from fractions import Fraction

from cliquefree.cliques import count_cliques
from cliquefree.ensemble import critical_exponents, p_from_exponent, sample_gnp
from cliquefree.extremal import deletion_heuristic, partite_heuristic
from cliquefree.graph import Graph, complete_graph

N = 80
SEED = 7

CASES = [
    ("K4", complete_graph(4), 3, 4),
    ("K3+pendant", Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (2, 3)]), 3, 4),
    ("K5", complete_graph(5), 3, 5),
]


def main():
    for name, h, m, k in CASES:
        e = critical_exponents(m, h)
        print(f"{name}, m = {m}: m2(H) = {e.m2_h}, m2(K_m) = {e.m2_km}, "
              f"a_H = {e.h_exponent}, a_Km = {e.km_exponent}  [{e.regime}]")
        for a in (e.h_exponent - Fraction(1, 10), e.h_exponent + Fraction(1, 10)):
            host = sample_gnp(N, p_from_exponent(N, a), SEED)
            total = count_cliques(host, m).total
            part = partite_heuristic(host, k, m, restarts=2, seed=SEED).clique_count
            dele = deletion_heuristic(host, h, m).clique_count
            print(f"    a = {str(a):>5}: host {total:6d}  partite {part:6d}  delete {dele:6d}")


if __name__ == "__main__":
    main()
