"""Command-line entry point: ``cliquefree <command> ...``."""

from __future__ import annotations

import argparse
import sys
import warnings
from collections import Counter
from fractions import Fraction
from pathlib import Path

from . import construct
from .cliques import count_cliques, second_moment_ratio
from .coloring import is_q_colorable, minimum_coloring
from .density import m2
from .ensemble import (
    EnsembleConfig,
    concentration_report,
    p_from_exponent,
    parse_probability,
    sample_gnp,
)
from .extremal import deletion_heuristic, exact_max_hfree_cliques, partite_heuristic
from .graph import BudgetExceeded, EdgeListError, Graph, read_edge_list, write_edge_list, write_labels
from .harness import TREND_HEADER, load_config, run_sweep, trend_holds, witness_trend, write_csv
from .lemmas import LEMMAS, check_lemma


def _load(path: str) -> Graph:
    text = Path(path).read_text(encoding="utf-8")
    labels = Path(path + ".labels")
    return read_edge_list(text, labels.read_text(encoding="utf-8") if labels.exists() else None)


def _emit(text: str, out: str | None):
    if not text.endswith("\n"):
        text += "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _pair(text: str) -> tuple[int, int]:
    u, w = text.split(",")
    return int(u), int(w)


# -- commands --------------------------------------------------------------


def cmd_m2(args) -> int:
    g = _load(args.input)
    rep = m2(g, pruned=args.pruned, budget=args.budget)
    lines = [f"m2 {rep.value}", f"method {rep.method}", f"subsets_examined {rep.subsets_examined}"]
    if args.witness:
        lines.append("witness " + " ".join(map(str, sorted(rep.witness))))
    _emit("\n".join(lines), args.out)
    return 0


def cmd_verify(args) -> int:
    res = check_lemma(args.lemma, args.k, args.t)
    lines = [
        f"lemma {args.lemma} k={args.k} t={args.t}",
        f"result {'pass' if res.passed else 'fail'}",
        f"subsets_examined {res.subsets_examined}",
        f"violations {res.violations}",
    ]
    if res.counterexample is not None:
        lines.append("counterexample " + " ".join(map(str, sorted(res.counterexample))))
        lines.append(f"counterexample_potential {res.counterexample_potential}")
    _emit("\n".join(lines), args.out)
    return 0 if res.passed else 1


def cmd_construct(args) -> int:
    eps = Fraction(args.epsilon) if args.epsilon else None
    t = args.t
    if t is None:
        if eps is None:
            raise SystemExit("construct: give --t or --epsilon")
        t = construct.t_for_epsilon(args.k, eps)
    builders = {
        "tower": construct.tower,
        "complex": construct.tower_complex,
        "supercomplex": construct.supercomplex,
    }
    if args.kind == "gke":
        g = construct.sparse_k_chromatic(args.k, t, eps)
    else:
        g = builders[args.kind](args.k, t)
    _emit(write_edge_list(g), args.out)
    _emit(write_labels(g), args.out + ".labels")
    print(f"{args.kind} k={args.k} t={t}: {g.n} vertices, {g.edge_count} edges", file=sys.stderr)
    return 0


def cmd_chi(args) -> int:
    g = _load(args.input)
    equal = [_pair(x) for x in args.equal]
    if equal:
        q = 1
        while True:
            col = is_q_colorable(g, q, equal, budget=args.budget)
            if col is not None or q > g.n:
                break
            q += 1
        if col is None:
            _emit("chi infeasible", args.out)
            return 1
    else:
        col = minimum_coloring(g, args.budget)
    lines = [f"chi {col.q}", "coloring " + " ".join(map(str, col.assignment))]
    _emit("\n".join(lines), args.out)
    return 0


def cmd_cliques(args) -> int:
    g = _load(args.input)
    stats = count_cliques(g, args.m)
    lines = [f"total {stats.total}"]
    if args.stats:
        hist = Counter(stats.per_edge.get(e, 0) for e in g.edges())
        lines.append("per_edge_histogram " + " ".join(f"{c}:{hist[c]}" for c in sorted(hist)))
        lines.append(f"sharing_pairs {stats.sharing_pairs}")
        lines.append(f"shared_copies {stats.shared_copies}")
        if stats.total:
            lines.append(f"second_moment_ratio {second_moment_ratio(g, args.m)}")
    _emit("\n".join(lines), args.out)
    return 0


def _probability(args) -> Fraction:
    if args.p_expr is not None:
        return p_from_exponent(args.n, Fraction(args.p_expr))
    if args.p is None:
        raise SystemExit("give --p or --p-expr")
    return parse_probability(args.p)


def cmd_sample(args) -> int:
    g = sample_gnp(args.n, _probability(args), args.seed)
    _emit(write_edge_list(g), args.out)
    return 0


def cmd_concentrate(args) -> int:
    cfg = EnsembleConfig(args.n, _probability(args), args.seed, args.trials)
    rep = concentration_report(cfg, args.m, args.workers)
    text = ",".join(rep.CSV_FIELDS) + "\n" + rep.csv_row() if args.header else rep.csv_row()
    _emit(text, args.out)
    return 0


def cmd_extremal(args) -> int:
    host = _load(args.input)
    h = _load(args.forbidden)
    if args.method == "exact":
        res = exact_max_hfree_cliques(host, h, args.m, budget=args.budget)
    elif args.method == "partite":
        from .coloring import chromatic_number

        k = args.k if args.k is not None else chromatic_number(h)
        res = partite_heuristic(host, k, args.m, args.restarts, args.seed)
    else:
        res = deletion_heuristic(host, h, args.m, args.cap)
    lines = [res.summary(), f"lower_bound_only {str(res.is_lower_bound).lower()}"]
    _emit("\n".join(lines), args.out)
    return 0


def cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    result = run_sweep(cfg, workers=args.workers, timing=args.timing)
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        write_csv(result.rows, fh)
    if result.exponents is not None:
        e = result.exponents
        print(
            f"k={result.k} 1/m2(H)={e.h_exponent} 1/m2(K_m)={e.km_exponent} ({e.regime})",
            file=sys.stderr,
        )
    return 0


def cmd_trend(args) -> int:
    t_list = [int(x) for x in args.t.split(",")]
    rows = witness_trend(args.k, t_list, args.budget)
    text = "\n".join([",".join(TREND_HEADER)] + [",".join(r.csv_values()) for r in rows])
    _emit(text, args.out)
    ok = trend_holds(rows) and all(r.within_bound is not False for r in rows)
    return 0 if ok else 1


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cliquefree", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("m2", cmd_m2, "2-density of an edge-list graph")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--witness", action="store_true")
    p.add_argument("--pruned", action="store_true", help="flow-based search, needed above 30 vertices")
    p.add_argument("--budget", type=float, default=None, help="seconds (pruned mode)")
    p.add_argument("--out")

    p = add("verify-lemmas", cmd_verify, "exhaustive potential checks on a built object")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--lemma", choices=LEMMAS, required=True)
    p.add_argument("--out")

    p = add("construct", cmd_construct, "write a tower / complex / supercomplex / G(k, eps)")
    p.add_argument("--kind", choices=["tower", "complex", "supercomplex", "gke"], required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t", type=int)
    p.add_argument("--epsilon", help="rational P/Q; sets t = ceil(k^3/eps) when --t is absent")
    p.add_argument("--out", required=True)

    p = add("chi", cmd_chi, "chromatic number and one optimal colouring")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--equal", action="append", default=[], metavar="U,W")
    p.add_argument("--budget", type=float, default=None)
    p.add_argument("--out")

    p = add("cliques", cmd_cliques, "count K_m copies")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--stats", action="store_true")
    p.add_argument("--out")

    for name, func, text in (
        ("sample", cmd_sample, "sample G(n, p)"),
        ("concentrate", cmd_concentrate, "clique-count concentration over trials"),
    ):
        p = add(name, func, text)
        p.add_argument("--n", type=int, required=True)
        grp = p.add_mutually_exclusive_group(required=True)
        grp.add_argument("--p", help="probability, e.g. 1/5")
        grp.add_argument("--p-expr", help="exponent a with p = n^-a, e.g. 11/20")
        p.add_argument("--seed", type=lambda s: int(s, 0), required=True)
        p.add_argument("--out")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--header", action="store_true")

    p = add("extremal", cmd_extremal, "H-free subgraph with many K_m")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--forbidden", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--method", choices=["exact", "partite", "delete"], required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--restarts", type=int, default=1)
    p.add_argument("--seed", type=lambda s: int(s, 0), default=0)
    p.add_argument("--cap", type=int, default=10**6)
    p.add_argument("--budget", type=float, default=None)
    p.add_argument("--out")

    p = add("sweep", cmd_sweep, "run a config-driven p-sweep to CSV")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="fill the wall_ms column")

    p = add("witness-trend", cmd_trend, "m2 and witness size of G(k, t) for several t")
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--t", default="1,2", help="comma-separated heights")
    p.add_argument("--budget", type=float, default=None)
    p.add_argument("--out")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            return args.func(args)
    except (EdgeListError, ValueError, BudgetExceeded, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
