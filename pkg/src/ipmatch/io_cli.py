"""File formats, match serialization, and query plumbing.

Graph files use the SNAP temporal edge-list layout: one ``<source>
<target> <timestamp>`` line per edge, whitespace separated, ``#`` lines
skipped.  Pattern files are the same 3-column format preceded by a
``nodes <n>`` header.  Matches are emitted as JSON Lines, one object per
match, so output streams and every line is independently parseable.
"""

from __future__ import annotations

import json
import time as _time
from dataclasses import dataclass
from typing import Optional, TextIO

from .baseline import brute_force, two_phase_search
from .matcher import Match, Strategy, interaction_search, verify_match
from .pattern import PatternGraph, pattern_from_triples, validate_pattern
from .temporal_graph import TemporalGraph, build_graph

DELTA_UNITS = {
    "raw": 1,
    "seconds": 1,
    "minutes": 60,
    "hours": 3600,
    "days": 86400,
}

STRATEGIES = ("simple", "index", "baseline", "oracle")


class ParseError(ValueError):
    """Malformed input file; message carries path and line number."""

    def __init__(self, path: str, line_no: int, message: str):
        super().__init__(f"{path}:{line_no}: {message}")
        self.path = path
        self.line_no = line_no


@dataclass(frozen=True)
class QuerySpec:
    """One CLI query: inputs, window, strategy, output controls."""

    graph_path: str
    pattern_path: str
    delta: int
    delta_unit: str = "raw"
    strategy: str = "index"
    limit: Optional[int] = None
    stats: bool = False
    seed: Optional[int] = None

    def effective_delta(self) -> int:
        if self.delta_unit not in DELTA_UNITS:
            raise ValueError(f"unknown delta unit {self.delta_unit!r}")
        delta = self.delta * DELTA_UNITS[self.delta_unit]
        if delta < 1:
            raise ValueError(f"delta must be >= 1 after unit conversion, got {delta}")
        return delta


@dataclass(frozen=True)
class GraphSummary:
    nodes: int
    temporal_edges: int
    static_edges: int
    start: Optional[int]
    end: Optional[int]

    @property
    def span_days(self) -> Optional[float]:
        """Time span in days assuming second-granularity timestamps."""
        if self.start is None:
            return None
        return (self.end - self.start) / 86400.0


def _parse_int(token: str, path: str, line_no: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(
            path, line_no, f"{what} {token!r} is not an integer"
        ) from None


def load_graph(path: str) -> TemporalGraph:
    """Read a SNAP-style temporal edge list.

    Timestamps must be integers; decimal values are rejected so that
    simultaneity stays exact.
    """
    edges: list[tuple[str, str, int]] = []
    with open(path, "r", encoding="ascii") as fh:
        for line_no, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            fields = stripped.split()
            if len(fields) != 3:
                raise ParseError(path, line_no, f"expected 3 fields, got {len(fields)}")
            u, v, raw_t = fields
            edges.append((u, v, _parse_int(raw_t, path, line_no, "timestamp")))
    if not edges:
        raise ParseError(path, 0, "no edges in file")
    return build_graph(edges)


def save_graph(g: TemporalGraph, path: str) -> None:
    with open(path, "w", encoding="ascii") as fh:
        for u, v, t in g.export_edges():
            fh.write(f"{u} {v} {t}\n")


def graph_summary(g: TemporalGraph) -> GraphSummary:
    start = g.times[0] if g.times else None
    end = g.times[-1] if g.times else None
    return GraphSummary(g.node_count, len(g.records), len(g.multiplicity), start, end)


def load_pattern(path: str) -> PatternGraph:
    """Read a pattern file: ``nodes <n>`` header then int triples."""
    triples: list[tuple[int, int, int]] = []
    node_count = None
    with open(path, "r", encoding="ascii") as fh:
        for line_no, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            fields = stripped.split()
            if node_count is None:
                if len(fields) != 2 or fields[0] != "nodes":
                    raise ParseError(path, line_no, "expected header 'nodes <n>'")
                node_count = _parse_int(fields[1], path, line_no, "node count")
                continue
            if len(fields) != 3:
                raise ParseError(path, line_no, f"expected 3 fields, got {len(fields)}")
            triples.append(tuple(
                _parse_int(f, path, line_no, w)
                for f, w in zip(fields, ("source", "target", "time"))
            ))
    if node_count is None:
        raise ParseError(path, 0, "missing 'nodes <n>' header")
    if not triples:
        raise ParseError(path, 0, "pattern has no edges")
    return pattern_from_triples(triples, node_count=node_count)


def save_pattern(p: PatternGraph, path: str) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"nodes {p.node_count}\n")
        for e in p.edges:
            fh.write(f"{e.source} {e.target} {e.time}\n")


def match_to_dict(m: Match, g: TemporalGraph) -> dict:
    """JSON-ready view of a match, using the original external labels."""
    return {
        "nodes": {str(i): g.node_label(node) for i, node in enumerate(m.node_map)},
        "edges": [
            [g.node_label(e.source), g.node_label(e.target), e.time]
            for e in (g.edge_at(pos) for pos in m.edge_assignment)
        ],
        "start": m.start,
        "end": m.end,
        "dur": m.dur,
    }


def match_json_line(m: Match, g: TemporalGraph) -> str:
    return json.dumps(match_to_dict(m, g), sort_keys=True, separators=(",", ":"))


def match_from_dict(obj: dict, g: TemporalGraph, p: PatternGraph) -> Match:
    """Rebuild a match from its JSON form.

    Exact duplicate edges are indistinguishable in the serialized form;
    any distinct-position resolution is equivalent for verification.
    """
    node_map = tuple(g.node_id(obj["nodes"][str(i)]) for i in range(p.node_count))
    taken: set[int] = set()
    assignment: list[int] = []
    for (u_label, v_label, t) in obj["edges"]:
        u, v = g.node_id(u_label), g.node_id(v_label)
        for pos in g.multiplicity.get((u, v), ()):
            if pos not in taken and g.times[pos] == t:
                taken.add(pos)
                assignment.append(pos)
                break
        else:
            raise ValueError(f"no unused graph edge matches {obj['edges']}")
    return Match(node_map, tuple(assignment), obj["start"], obj["end"], obj["dur"])


def run_search(g: TemporalGraph, p: PatternGraph, delta: int, strategy: str,
               limit: Optional[int] = None):
    """Dispatch one query; returns (matches, stats-or-None).

    The baseline and oracle strategies return matches sorted into the
    same order the search strategies emit (lexicographic by assigned
    edge positions), so outputs are directly comparable.
    """
    if strategy in ("simple", "index"):
        strat = Strategy.SIMPLE if strategy == "simple" else Strategy.INDEX
        return interaction_search(g, p, delta, strat, limit=limit)
    if strategy == "baseline":
        matches, stats = two_phase_search(g, p, delta)
        matches.sort(key=lambda m: m.edge_assignment)
        return matches[:limit] if limit is not None else matches, stats
    if strategy == "oracle":
        found = sorted(brute_force(g, p, delta), key=lambda m: m.edge_assignment)
        return found[:limit] if limit is not None else found, None
    raise ValueError(f"unknown strategy {strategy!r}")


def run_query(q: QuerySpec, out: TextIO, err: TextIO) -> int:
    """Execute one query; exit status 0 ok, 1 parse/validation, 2 I/O."""
    try:
        delta = q.effective_delta()
        g = load_graph(q.graph_path)
        p = load_pattern(q.pattern_path)
        report = validate_pattern(p, delta)
        if not report.ok:
            print(f"invalid pattern: {report}", file=err)
            return 1
        t0 = _time.perf_counter()
        matches, stats = run_search(g, p, delta, q.strategy, q.limit)
        millis = (_time.perf_counter() - t0) * 1000.0
    except OSError as exc:
        print(f"i/o error: {exc}", file=err)
        return 2
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return 1
    for m in matches:
        print(match_json_line(m, g), file=out)
    if q.stats:
        summary = {"millis": round(millis, 3), "matches": len(matches)}
        if stats is not None:
            summary.update(stats.as_dict())
        print(json.dumps({"summary": summary}, sort_keys=True), file=out)
    return 0


def validate_files(graph_path: str, pattern_path: str, delta: int,
                   out: TextIO, err: TextIO) -> int:
    """Load both inputs, report counts and any pattern violations."""
    try:
        g = load_graph(graph_path)
        p = load_pattern(pattern_path)
    except OSError as exc:
        print(f"i/o error: {exc}", file=err)
        return 2
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return 1
    s = graph_summary(g)
    print(
        f"graph: {s.nodes} nodes, {s.temporal_edges} temporal edges, "
        f"{s.static_edges} static edges, span {s.span_days:.2f} days", file=out,
    )
    print(f"pattern: {p.node_count} nodes, {len(p.edges)} edges", file=out)
    report = validate_pattern(p, delta)
    if report.ok:
        print("ok", file=out)
        return 0
    for violation in report.violations:
        print(f"violation: {violation}", file=out)
    return 1


def verify_output_line(line: str, g: TemporalGraph, p: PatternGraph, delta: int) -> bool:
    """Re-parse one emitted JSON line and verify it; used by tests."""
    m = match_from_dict(json.loads(line), g, p)
    return verify_match(g, p, delta, m).ok
