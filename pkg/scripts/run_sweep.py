"""Run a sweep config, write the CSV, and print mean ratios per grid point.

    python3 scripts/run_sweep.py configs/regimes.cfg --out sweep.csv
"""

import argparse
from collections import defaultdict

from cliquefree.harness import load_config, run_sweep, write_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("config")
    ap.add_argument("--out", default="sweep.csv")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    cfg = load_config(args.config)
    result = run_sweep(cfg, workers=args.workers)
    with open(args.out, "w", newline="") as fh:
        write_csv(result.rows, fh)

    e = result.exponents
    print(f"k = {result.k}; H threshold exponent {e.h_exponent}, K_m exponent {e.km_exponent} ({e.regime})")
    ratios = defaultdict(list)
    for r in result.rows:
        if r.ratio_to_host:
            ratios[(r.a or r.p, r.method)].append(float(r.ratio_to_host))
    for (point, method), vals in sorted(ratios.items()):
        print(f"{point:>8}  {method:<8} mean ratio_to_host {sum(vals) / len(vals):.3f}  ({len(vals)} trials)")
    print(f"wrote {len(result.rows)} rows to {args.out}")


if __name__ == "__main__":
    main()
