"""Print m2 of the sparse k-chromatic construction G(k, t) as t grows.

The 2-density should fall towards the critical value while the densest
subgraph stays the whole graph.
"""

import argparse

from cliquefree.density import critical_density
from cliquefree.harness import TREND_HEADER, trend_holds, witness_trend


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, default=4)
    ap.add_argument("--t", default="1,2")
    ap.add_argument("--budget", type=float, default=60.0)
    args = ap.parse_args()

    t_list = [int(x) for x in args.t.split(",")]
    rows = witness_trend(args.k, t_list, budget=args.budget)
    print(f"critical density {critical_density(args.k)} = {float(critical_density(args.k)):.4f}")
    print(",".join(TREND_HEADER))
    for r in rows:
        print(",".join(r.csv_values()))
    print("decreasing and within bound:", trend_holds(rows))


if __name__ == "__main__":
    main()
