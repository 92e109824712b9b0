"""Benchmark harness: query generators, delta/size sweeps, CSV reports.

Two query families are supported: fixed-length path queries (edges with
consecutive timestamps) and random queries grown by a seeded DFS over
the static projection.  Every (query, delta, strategy) cell records
wall-clock time, matches found and candidate counts; per-cell match
counts must agree across strategies or the run aborts with the
offending instance saved for replay.

Cells are independent; the harness runs them sequentially by default so
timings stay stable, with an opt-in thread pool for large sweeps.
"""

from __future__ import annotations

import csv
import random
import time as _time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .io_cli import DELTA_UNITS, load_graph, run_search, save_pattern
from .pattern import PatternGraph, pattern_from_triples, validate_pattern
from .temporal_graph import TemporalGraph, static_projection

CSV_HEADER = ["family", "size", "delta", "strategy", "query_id", "millis", "matches", "candidates"]


class QueryGenerationError(RuntimeError):
    """Random query generation could not visit enough nodes."""


class StrategyMismatchError(RuntimeError):
    """Two strategies disagreed on a bench cell's match count."""


@dataclass
class BenchPlan:
    graph_path: str
    family: str  # "path" or "random"
    sizes: list[int]
    deltas: list[int]
    strategies: list[str]
    count: int = 100  # random queries per size
    delta_unit: str = "raw"
    seed: int = 0
    output: Optional[str] = None
    parallel: int = 1

    def __post_init__(self):
        if self.family not in ("path", "random"):
            raise ValueError(f"unknown query family {self.family!r}")
        if self.count < 1:
            raise ValueError("count must be >= 1")
        for s in self.strategies:
            if s not in ("simple", "index", "baseline"):
                raise ValueError(f"unknown bench strategy {s!r}")


@dataclass(frozen=True)
class BenchRow:
    family: str
    size: int
    delta: int
    strategy: str
    query_id: str
    millis: float
    matches: int
    candidates: int

    def as_list(self) -> list:
        return [self.family, self.size, self.delta, self.strategy,
                self.query_id, f"{self.millis:.3f}", self.matches, self.candidates]


def generate_path_query(length: int) -> PatternGraph:
    """Path of ``length`` edges with consecutive timestamps, all steps strict."""
    if length < 1:
        raise ValueError(f"path length must be >= 1, got {length}")
    return pattern_from_triples(
        [(i, i + 1, i + 1) for i in range(length)], node_count=length + 1
    )


def generate_random_query(g: TemporalGraph, n: int, seed: int,
                          max_restarts: int = 50) -> PatternGraph:
    """Grow an ``n``-node pattern by seeded DFS over the static projection.

    The pattern consists of the DFS tree edges, renamed to dense ids in
    discovery order; edge times are the ranks 1..n-1 of the traversal,
    which is a topological order of the tree.  Deterministic for a given
    (graph, n, seed).
    """
    if n < 2:
        raise ValueError(f"random query size must be >= 2, got {n}")
    rng = random.Random(seed)
    out_adj: dict[int, list[int]] = {}
    for a, b in sorted(static_projection(g).edges):
        out_adj.setdefault(a, []).append(b)

    for _ in range(max_restarts):
        start = rng.randrange(g.node_count)
        order = {start: 0}
        tree: list[tuple[int, int]] = []
        stack = [(start, iter(_shuffled(out_adj.get(start, ()), rng)))]
        while stack and len(order) < n:
            node, neighbors = stack[-1]
            for nbr in neighbors:
                if nbr not in order:
                    order[nbr] = len(order)
                    tree.append((node, nbr))
                    stack.append((nbr, iter(_shuffled(out_adj.get(nbr, ()), rng))))
                    break
            else:
                stack.pop()
        if len(order) == n:
            triples = [
                (order[u], order[v], rank) for rank, (u, v) in enumerate(tree, start=1)
            ]
            return pattern_from_triples(triples, node_count=n)
    raise QueryGenerationError(
        f"no DFS start reached {n} nodes after {max_restarts} attempts"
    )


def _shuffled(items, rng: random.Random) -> list:
    copy = list(items)
    rng.shuffle(copy)
    return copy


def _queries(plan: BenchPlan, g: TemporalGraph) -> list[tuple[int, str, PatternGraph]]:
    queries = []
    if plan.family == "path":
        for length in plan.sizes:
            queries.append((length, f"len{length}", generate_path_query(length)))
    else:
        for size in plan.sizes:
            for i in range(plan.count):
                seed = plan.seed * 1_000_003 + size * 1_009 + i
                queries.append((size, f"s{size}q{i}", generate_random_query(g, size, seed)))
    return queries


def _run_cell(g, pattern, delta, strategy) -> tuple[float, int, int]:
    t0 = _time.perf_counter()
    matches, stats = run_search(g, pattern, delta, strategy)
    millis = (_time.perf_counter() - t0) * 1000.0
    if strategy == "baseline":
        candidates = stats.temporal_candidates
    else:
        candidates = stats.candidates_examined
    return millis, len(matches), candidates


def run_bench(plan: BenchPlan) -> list[BenchRow]:
    """Execute the sweep and return all rows; writes CSV when requested.

    Per-cell match counts must agree across the plan's strategies; the
    first disagreement aborts the run after saving the offending pattern
    next to the report for replay.
    """
    g = load_graph(plan.graph_path)
    unit = DELTA_UNITS[plan.delta_unit]
    deltas = [d * unit for d in plan.deltas]
    queries = _queries(plan, g)

    # a window shorter than the query's own duration admits no matches and
    # the engines refuse it outright; such cells are skipped, not zeroed
    cells = [
        (size, qid, pattern, delta, strategy)
        for (size, qid, pattern) in queries
        for delta in deltas
        if validate_pattern(pattern, delta).ok
        for strategy in plan.strategies
    ]

    def work(cell):
        size, qid, pattern, delta, strategy = cell
        millis, matches, candidates = _run_cell(g, pattern, delta, strategy)
        return BenchRow(plan.family, size, delta, strategy, qid, millis, matches, candidates)

    if plan.parallel > 1:
        with ThreadPoolExecutor(max_workers=plan.parallel) as pool:
            rows = list(pool.map(work, cells))
    else:
        rows = [work(cell) for cell in cells]

    _check_agreement(plan, queries, rows)

    aggregates = _aggregate(plan, rows)
    all_rows = rows + aggregates
    if plan.output:
        _write_csv(plan, all_rows)
    return all_rows


def _check_agreement(plan: BenchPlan, queries, rows: list[BenchRow]) -> None:
    by_cell: dict[tuple[str, int], set[int]] = {}
    for row in rows:
        by_cell.setdefault((row.query_id, row.delta), set()).add(row.matches)
    for (qid, delta), counts in sorted(by_cell.items()):
        if len(counts) > 1:
            pattern = next(p for (_, q, p) in queries if q == qid)
            dump = (plan.output or "bench") + f".mismatch-{qid}-d{delta}.pattern"
            save_pattern(pattern, dump)
            raise StrategyMismatchError(
                f"strategies disagree on query {qid} delta {delta}: "
                f"match counts {sorted(counts)}; pattern saved to {dump}"
            )


def _aggregate(plan: BenchPlan, rows: list[BenchRow]) -> list[BenchRow]:
    groups: dict[tuple[int, int, str], list[BenchRow]] = {}
    for row in rows:
        groups.setdefault((row.size, row.delta, row.strategy), []).append(row)
    aggregates = []
    for (size, delta, strategy), members in sorted(groups.items()):
        k = len(members)
        aggregates.append(BenchRow(
            plan.family, size, delta, strategy, "avg",
            sum(r.millis for r in members) / k,
            round(sum(r.matches for r in members) / k),
            round(sum(r.candidates for r in members) / k),
        ))
    return aggregates


def _write_csv(plan: BenchPlan, rows: list[BenchRow]) -> None:
    with open(plan.output, "w", encoding="ascii", newline="") as fh:
        fh.write("# wall-clock per query call, graph load excluded\n")
        fh.write(f"# family={plan.family} seed={plan.seed} "
                 f"delta_unit={plan.delta_unit} count={plan.count}\n")
        fh.write("# random-query edge order: DFS discovery order, rank times\n")
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for row in rows:
            writer.writerow(row.as_list())
