"""Probability sweeps comparing the extremal heuristics, and the witness-size trend.

Config files are flat ``key = value`` text; see README for the grammar.
"""

from __future__ import annotations

import csv
import io
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from fractions import Fraction
from pathlib import Path
from typing import TextIO

from .cliques import count_cliques_in
from .coloring import chromatic_number
from .construct import sparse_k_chromatic
from .density import critical_density, m2
from .ensemble import (
    CriticalExponents,
    critical_exponents,
    expected_clique_count,
    p_from_exponent,
    parse_probability,
    partite_prediction,
    sample_gnp,
    trial_seed,
)
from .extremal import deletion_heuristic, exact_max_hfree_cliques, partite_heuristic
from .graph import BudgetExceeded, Graph, read_edge_list

METHODS = ("delete", "exact", "partite")
EXACT_MAX_N = 10


@dataclass(frozen=True)
class SweepConfig:
    n: int
    m: int
    forbidden: Graph
    exponents: tuple[Fraction, ...] = ()
    probabilities: tuple[Fraction, ...] = ()
    trials: int = 1
    seed: int = 0
    methods: tuple[str, ...] = ("partite", "delete")
    exact: bool = False
    k: int | None = None
    restarts: int = 1
    cap: int = 10**6
    forbidden_path: str = ""

    def __post_init__(self):
        if bool(self.exponents) == bool(self.probabilities):
            raise ValueError("give exactly one of exponents / probabilities")
        if not self.methods:
            raise ValueError("methods must be nonempty")
        unknown = set(self.methods) - set(METHODS)
        if unknown:
            raise ValueError(f"unknown methods {sorted(unknown)}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        for p in self.p_grid():
            if not 0 < p[1] <= 1:
                raise ValueError(f"p={p[1]} outside (0, 1]")

    def p_grid(self) -> list[tuple[Fraction | None, Fraction]]:
        """(exponent or None, p) pairs sorted by p."""
        if self.exponents:
            grid = [(a, p_from_exponent(self.n, a)) for a in self.exponents]
        else:
            grid = [(None, p) for p in self.probabilities]
        return sorted(grid, key=lambda x: x[1])

    @property
    def all_methods(self) -> tuple[str, ...]:
        ms = set(self.methods)
        if self.exact:
            ms.add("exact")
        return tuple(sorted(ms))


def _fractions(text: str) -> tuple[Fraction, ...]:
    return tuple(Fraction(x.strip()) for x in text.split(",") if x.strip())


def parse_config(text: str, base_dir: Path | str = ".") -> SweepConfig:
    """Parse the flat key = value config; relative ``forbidden`` paths resolve against ``base_dir``."""
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key = value")
        key, value = (x.strip() for x in line.split("=", 1))
        if key in raw:
            raise ValueError(f"line {lineno}: duplicate key {key!r}")
        raw[key] = value
    known = {
        "n", "m", "forbidden", "exponents", "probabilities", "trials", "seed",
        "methods", "exact", "k", "restarts", "cap",
    }
    extra = set(raw) - known
    if extra:
        raise ValueError(f"unknown config keys {sorted(extra)}")
    for key in ("n", "m", "forbidden"):
        if key not in raw:
            raise ValueError(f"missing required key {key!r}")
    path = Path(raw["forbidden"])
    if not path.is_absolute():
        path = Path(base_dir) / path
    return SweepConfig(
        n=int(raw["n"]),
        m=int(raw["m"]),
        forbidden=read_edge_list(path.read_text()),
        exponents=_fractions(raw.get("exponents", "")),
        probabilities=tuple(parse_probability(p) for p in _fractions(raw.get("probabilities", ""))),
        trials=int(raw.get("trials", 1)),
        seed=int(raw.get("seed", "0"), 0),
        methods=tuple(x.strip() for x in raw.get("methods", "partite,delete").split(",") if x.strip()),
        exact=raw.get("exact", "false").lower() in ("1", "true", "yes"),
        k=int(raw["k"]) if "k" in raw else None,
        restarts=int(raw.get("restarts", 1)),
        cap=int(raw.get("cap", 10**6)),
        forbidden_path=str(path),
    )


def load_config(path: Path | str) -> SweepConfig:
    path = Path(path)
    return parse_config(path.read_text(), path.parent)


@dataclass(frozen=True)
class SweepRow:
    n: int
    a: str
    p: str
    trial: int
    seed: int
    host_cliques: int
    expected_cliques: str
    method: str
    surviving_cliques: str
    ratio_to_host: str
    ratio_to_partite_prediction: str
    h_free_certified: str
    wall_ms: str = ""
    error: str = ""

    @classmethod
    def header(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    def values(self) -> list[str]:
        return [str(getattr(self, f)) for f in self.header()]


def _ratio(num: int, den) -> str:
    return f"{num / den:.6f}" if den else ""


def _p_text(a: Fraction | None, p: Fraction) -> str:
    return repr(float(p)) if a is not None else str(p)


@dataclass(frozen=True)
class _Task:
    cfg: SweepConfig
    k: int
    a: Fraction | None
    p: Fraction
    trial: int
    timing: bool


def _run_point(task: _Task) -> list[SweepRow]:
    cfg = task.cfg
    seed = trial_seed(cfg.seed, task.trial)
    host = sample_gnp(cfg.n, task.p, seed)
    total = count_cliques_in(host.adj, cfg.m, host.vertex_mask)
    expected = expected_clique_count(cfg.n, task.p, cfg.m)
    prediction = partite_prediction(cfg.n, task.p, cfg.m, task.k)
    rows = []
    for method in cfg.all_methods:
        start = time.perf_counter()
        error = ""
        result = None
        try:
            if method == "partite":
                result = partite_heuristic(host, task.k, cfg.m, cfg.restarts, seed)
            elif method == "delete":
                result = deletion_heuristic(host, cfg.forbidden, cfg.m, cfg.cap)
            elif cfg.n <= EXACT_MAX_N:
                result = exact_max_hfree_cliques(host, cfg.forbidden, cfg.m)
            else:
                error = f"skipped: exact search limited to n <= {EXACT_MAX_N}"
        except (BudgetExceeded, ValueError) as exc:
            error = f"{type(exc).__name__}: {exc}"
        elapsed = (time.perf_counter() - start) * 1000
        kept = result.clique_count if result is not None else None
        rows.append(
            SweepRow(
                n=cfg.n,
                a="" if task.a is None else str(task.a),
                p=_p_text(task.a, task.p),
                trial=task.trial,
                seed=seed,
                host_cliques=total,
                expected_cliques=f"{float(expected):.6f}",
                method=method,
                surviving_cliques="" if kept is None else str(kept),
                ratio_to_host="" if kept is None else _ratio(kept, total),
                ratio_to_partite_prediction="" if kept is None else _ratio(kept, float(prediction)),
                h_free_certified="" if result is None else str(result.h_free_certified).lower(),
                wall_ms=f"{elapsed:.1f}" if task.timing else "",
                error=error.replace(",", ";").replace("\n", " "),
            )
        )
    return rows


@dataclass
class SweepResult:
    rows: list[SweepRow]
    k: int
    exponents: CriticalExponents | None = None


def run_sweep(cfg: SweepConfig, *, workers: int = 1, timing: bool = False) -> SweepResult:
    """Every (p, trial) point: sample a host, count K_m, run each method.

    Rows come back sorted by (p, trial, method) whatever the worker count.
    """
    k = cfg.k if cfg.k is not None else chromatic_number(cfg.forbidden)
    h = cfg.forbidden
    exps = critical_exponents(cfg.m, h) if cfg.m >= 3 and h.n >= 3 and h.edge_count >= 2 else None
    tasks = [
        _Task(cfg, k, a, p, trial, timing)
        for a, p in cfg.p_grid()
        for trial in range(cfg.trials)
    ]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            batches = list(pool.map(_run_point, tasks))
    else:
        batches = [_run_point(t) for t in tasks]
    # tasks are in (p, trial) order and map() keeps it; methods are sorted per task
    rows = [r for batch in batches for r in batch]
    return SweepResult(rows, k, exps)


def write_csv(rows: list[SweepRow], out: TextIO):
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(SweepRow.header())
    for r in rows:
        writer.writerow(r.values())


def rows_to_csv(rows: list[SweepRow]) -> str:
    buf = io.StringIO()
    write_csv(rows, buf)
    return buf.getvalue()


# -- witness-size trend --------------------------------------------------------


@dataclass(frozen=True)
class TrendRow:
    t: int
    n: int
    m2: Fraction | None
    witness_size: int | None
    bound: Fraction
    status: str

    @property
    def within_bound(self) -> bool | None:
        return None if self.m2 is None else self.m2 <= self.bound

    def csv_values(self) -> list[str]:
        return [
            str(self.t), str(self.n),
            "" if self.m2 is None else str(self.m2),
            "" if self.witness_size is None else str(self.witness_size),
            str(self.bound),
            "" if self.within_bound is None else str(self.within_bound).lower(),
            self.status,
        ]


TREND_HEADER = ["t", "n", "m2", "witness_size", "bound", "within_bound", "status"]


def witness_trend(k: int, t_list, budget: float | None = None) -> list[TrendRow]:
    """m2 and witness size of the sparse k-chromatic graph for each height t.

    ``bound`` is (1 + k^3/t) times the critical density; rows that run out of
    ``budget`` seconds are marked skipped.
    """
    rows = []
    for t in t_list:
        g = sparse_k_chromatic(k, t)
        bound = (1 + Fraction(k**3, t)) * critical_density(k)
        try:
            rep = m2(g, pruned=True, budget=budget)
        except (BudgetExceeded, OverflowError) as exc:
            rows.append(TrendRow(t, g.n, None, None, bound, f"skipped: {exc}"))
            continue
        rows.append(TrendRow(t, g.n, rep.value, rep.witness_size, bound, "ok"))
    return rows


def trend_holds(rows: list[TrendRow]) -> bool:
    """m2 non-increasing and witness size non-decreasing along the completed rows."""
    done = [r for r in rows if r.status == "ok"]
    return all(
        b.m2 <= a.m2 and b.witness_size >= a.witness_size for a, b in zip(done, done[1:])
    )
