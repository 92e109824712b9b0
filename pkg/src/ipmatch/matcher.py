"""Depth-first interaction-pattern search over the time-ordered edge list.

Pattern edges are matched one by one in their time order.  At each depth
the engine asks a matching-edge routine for the next admissible graph
edge; two interchangeable routines are provided:

* :func:`simple_me` scans the flat edge list linearly from the depth's
  resume cursor.
* :func:`index_me` walks the per-node next-in-time links, so only edges
  incident to an already-mapped node are touched once one endpoint of
  the pattern edge is bound.

Both routines return identical candidates in identical order; they
differ only in how many edges they examine.  A failed call triggers a
backtrack, a successful one extends the partial match, and a complete
assignment is recorded and then popped so enumeration continues.

Candidate admissibility at depth d (pattern edge (u, v)):

* time order - strictly after the previous matched edge when the
  pattern step is STRICT, simultaneous when EQUAL;
* window - candidate time <= time(first matched edge) + delta - 1,
  which is exactly dur(match) <= delta for time-ordered matching;
* structure - endpoints agree with the partial node mapping, fresh
  pattern nodes get a graph node no other pattern node uses, and the
  edge is not already part of the partial match.

For an EQUAL step the scan starts at the beginning of the previous
edge's equal-time block, not after it: simultaneous graph edges sit at
adjacent but ordered positions and a valid assignment may pick them in
either position order.

A single query run is sequential and owns its private SearchState; one
graph may serve any number of concurrent searches.
"""

from __future__ import annotations

import bisect
import enum
from dataclasses import dataclass, field
from typing import Callable, Optional

from .pattern import PatternGraph, Relation, ValidationReport, validate_pattern
from .temporal_graph import TemporalGraph


class InvalidPatternError(ValueError):
    """Search precondition failure; carries the validation report."""

    def __init__(self, report: ValidationReport):
        super().__init__(f"invalid pattern: {report}")
        self.report = report


class Strategy(enum.Enum):
    SIMPLE = "simple"
    INDEX = "index"


@dataclass
class SearchStats:
    """Work counters for one search run."""

    candidates_examined: int = 0
    matches_found: int = 0
    max_depth_reached: int = 0
    pushes: int = 0
    pops: int = 0

    def as_dict(self) -> dict[str, int]:
        return {
            "candidates_examined": self.candidates_examined,
            "matches_found": self.matches_found,
            "max_depth_reached": self.max_depth_reached,
            "pushes": self.pushes,
            "pops": self.pops,
        }


@dataclass(frozen=True, slots=True)
class Match:
    """One complete match.

    ``node_map[i]`` is the graph node assigned to pattern node ``i``;
    ``edge_assignment[d]`` is the graph edge position assigned to the
    d-th pattern edge (in pattern list order).
    """

    node_map: tuple[int, ...]
    edge_assignment: tuple[int, ...]
    start: int
    end: int
    dur: int

    def node_dict(self) -> dict[int, int]:
        return dict(enumerate(self.node_map))


_MISSING = object()


class SearchState:
    """Backtracking state: stack, mapping tables, cursors, deadline.

    Confined to a single query execution; never shared across threads.
    """

    __slots__ = (
        "delta", "stack", "stack_positions", "F", "F_edge", "used_nodes",
        "cursors", "deadline", "stats", "_snapshots",
    )

    def __init__(self, p: PatternGraph, delta: int, keep_snapshots: bool = False):
        self.delta = delta
        self.stack: list[tuple[int, tuple]] = []
        self.stack_positions: set[int] = set()
        self.F: dict[int, int] = {}
        self.F_edge: dict[int, int] = {}
        self.used_nodes: set[int] = set()
        self.cursors: list[int] = [-1] * len(p.edges)
        self.deadline: Optional[int] = None
        self.stats = SearchStats()
        self._snapshots: Optional[list] = [] if keep_snapshots else None

    @property
    def depth(self) -> int:
        return len(self.stack)

    def push(self, g: TemporalGraph, p: PatternGraph, depth: int, pos: int) -> None:
        """Bind graph edge ``pos`` to pattern edge ``depth``, recording undo info."""
        if self._snapshots is not None:
            self._snapshots.append(
                (dict(self.F), dict(self.F_edge), set(self.used_nodes))
            )
        edge = g.records[pos].edge
        pe = p.edges[depth]
        undo: list[tuple] = []
        for pnode, gnode in ((pe.source, edge.source), (pe.target, edge.target)):
            if pnode not in self.F:
                self.F[pnode] = gnode
                self.used_nodes.add(gnode)
                undo.append(("F", pnode, gnode))
        endpoints = (pe.source,) if pe.source == pe.target else (pe.source, pe.target)
        for pnode in endpoints:
            undo.append(("F_edge", pnode, self.F_edge.get(pnode, _MISSING)))
            self.F_edge[pnode] = pos
        if not self.stack:
            self.deadline = edge.time + self.delta - 1
        self.stack.append((pos, tuple(undo)))
        self.stack_positions.add(pos)
        self.stats.pushes += 1
        if len(self.stack) > self.stats.max_depth_reached:
            self.stats.max_depth_reached = len(self.stack)

    def pop(self) -> None:
        pos, undo = self.stack.pop()
        self.stack_positions.discard(pos)
        for entry in reversed(undo):
            kind, pnode, old = entry
            if kind == "F":
                del self.F[pnode]
                self.used_nodes.discard(old)
            else:
                if old is _MISSING:
                    del self.F_edge[pnode]
                else:
                    self.F_edge[pnode] = old
        if not self.stack:
            self.deadline = None
        self.stats.pops += 1
        if self._snapshots is not None:
            f_snap, fe_snap, used_snap = self._snapshots.pop()
            assert self.F == f_snap and self.F_edge == fe_snap \
                and self.used_nodes == used_snap, "backtrack failed to restore state"


def _admissible(state: SearchState, g: TemporalGraph, p: PatternGraph,
                depth: int, pos: int) -> bool:
    """Full candidate test except the scan stop bound (handled by callers)."""
    edge = g.records[pos].edge
    if depth > 0:
        prev_time = g.times[state.stack[-1][0]]
        if p.tags[depth] is Relation.STRICT:
            if edge.time <= prev_time:
                return False
        elif edge.time != prev_time:
            return False
    if pos in state.stack_positions:
        return False
    pe = p.edges[depth]
    a, b = edge.source, edge.target
    if pe.source == pe.target:
        if a != b:
            return False
        fu = state.F.get(pe.source)
        return fu == a if fu is not None else a not in state.used_nodes
    fu = state.F.get(pe.source)
    fv = state.F.get(pe.target)
    if fu is not None and fv is not None:
        return a == fu and b == fv
    if fu is not None:
        return a == fu and b not in state.used_nodes
    if fv is not None:
        return b == fv and a not in state.used_nodes
    return a != b and a not in state.used_nodes and b not in state.used_nodes


def _stop_time(state: SearchState, g: TemporalGraph, p: PatternGraph,
               depth: int) -> Optional[int]:
    """Largest admissible candidate time at this depth, None when unbounded."""
    if depth == 0:
        return None
    if p.tags[depth] is Relation.EQUAL:
        return g.times[state.stack[-1][0]]
    return state.deadline


def _linear_scan(state: SearchState, g: TemporalGraph, p: PatternGraph,
                 depth: int) -> Optional[int]:
    times = g.times
    n = len(times)
    stop = _stop_time(state, g, p, depth)
    j = state.cursors[depth] + 1
    while j < n:
        state.stats.candidates_examined += 1
        if stop is not None and times[j] > stop:
            return None
        if _admissible(state, g, p, depth, j):
            state.cursors[depth] = j
            state.push(g, p, depth, j)
            return j
        j += 1
    return None


def simple_me(state: SearchState, g: TemporalGraph, p: PatternGraph,
              depth: int) -> Optional[int]:
    """Linear-scan matching edge: next admissible position after the cursor.

    On success the edge is pushed (mapping updates recorded for undo) and
    the depth's cursor advances; None signals backtrack.
    """
    return _linear_scan(state, g, p, depth)


def _chain_scan(state: SearchState, g: TemporalGraph, p: PatternGraph,
                depth: int, node: int, out: bool, lo: int) -> Optional[int]:
    """Walk a node's link chain; same contract and order as the linear scan.

    The entry point (first chain position > lo) is found by binary search
    on the node's position list; every further step follows the per-edge
    next-in-time links.
    """
    times = g.times
    records = g.records
    positions = g.out_positions[node] if out else g.in_positions[node]
    k = bisect.bisect_right(positions, lo)
    if k == len(positions):
        return None
    stop = _stop_time(state, g, p, depth)
    j: Optional[int] = positions[k]
    while j is not None:
        state.stats.candidates_examined += 1
        if stop is not None and times[j] > stop:
            return None
        if _admissible(state, g, p, depth, j):
            state.cursors[depth] = j
            state.push(g, p, depth, j)
            return j
        rec = records[j]
        j = rec.next_src_out if out else rec.next_tgt_in
    return None


def index_me(state: SearchState, g: TemporalGraph, p: PatternGraph,
             depth: int) -> Optional[int]:
    """Link-walking matching edge; returns exactly what simple_me would.

    With both endpoints mapped the walk follows the link list of the
    endpoint whose last incident matched edge is most recent (ties go to
    the source); with one endpoint mapped it follows that node's out- or
    in-links; with neither mapped it degenerates to the linear scan.
    """
    pe = p.edges[depth]
    fu = state.F.get(pe.source)
    fv = state.F.get(pe.target)
    if fu is None and fv is None:
        return _linear_scan(state, g, p, depth)

    lo = state.cursors[depth]
    # A STRICT step needs a strictly later time than any stack edge, so
    # chain entries at or before the latest incident matched edge cannot
    # qualify and the walk may start past them.  An EQUAL step must not
    # take that shortcut: simultaneous edges can sit earlier in the block.
    clamp_ok = p.tags[depth] is Relation.STRICT
    if fu is not None and fv is not None:
        eu = state.F_edge[pe.source]
        ev = state.F_edge[pe.target]
        if clamp_ok:
            lo = max(lo, eu, ev)
        node, out = (fu, True) if eu >= ev else (fv, False)
    elif fu is not None:
        if clamp_ok:
            lo = max(lo, state.F_edge[pe.source])
        node, out = fu, True
    else:
        if clamp_ok:
            lo = max(lo, state.F_edge[pe.target])
        node, out = fv, False
    return _chain_scan(state, g, p, depth, node, out, lo)


_ME: dict[Strategy, Callable] = {Strategy.SIMPLE: simple_me, Strategy.INDEX: index_me}


def _initial_cursor(g: TemporalGraph, p: PatternGraph, depth: int, prev_pos: int) -> int:
    """Exclusive scan lower bound for a freshly entered depth."""
    if p.tags[depth] is Relation.EQUAL:
        return g.block_start(g.times[prev_pos]) - 1
    return prev_pos


def _emit(g: TemporalGraph, p: PatternGraph, state: SearchState) -> Match:
    node_map = tuple(state.F[i] for i in range(p.node_count))
    assignment = tuple(pos for pos, _ in state.stack)
    start = g.times[assignment[0]]
    end = g.times[assignment[-1]]
    return Match(node_map, assignment, start, end, end - start + 1)


def interaction_search(
    g: TemporalGraph,
    p: PatternGraph,
    delta: int,
    strategy: Strategy = Strategy.INDEX,
    limit: Optional[int] = None,
    _debug_checks: bool = False,
) -> tuple[list[Match], SearchStats]:
    """Enumerate every match of ``p`` in ``g`` within the ``delta`` window.

    Matches are emitted in depth-first discovery order, which is
    lexicographic in the edge assignment positions (so earliest-starting
    matches surface first).  ``limit`` truncates the output after that
    many matches; SIMPLE and INDEX produce identical lists.
    """
    report = validate_pattern(p, delta)
    if not report.ok:
        raise InvalidPatternError(report)
    state = SearchState(p, delta, keep_snapshots=_debug_checks)
    matches: list[Match] = []
    if limit is not None and limit <= 0:
        return matches, state.stats
    me = _ME[strategy]
    last = len(p.edges) - 1
    d = 0
    while True:
        pos = me(state, g, p, d)
        if pos is not None:
            if d == last:
                matches.append(_emit(g, p, state))
                state.stats.matches_found += 1
                if limit is not None and len(matches) >= limit:
                    break
                state.pop()
            else:
                d += 1
                state.cursors[d] = _initial_cursor(g, p, d, pos)
        else:
            if d == 0:
                break
            state.pop()
            d -= 1
    return matches, state.stats


@dataclass(frozen=True, slots=True)
class VerifyResult:
    violations: tuple[tuple[int, str], ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "; ".join(f"condition {c}: {msg}" for c, msg in self.violations)


def verify_match(g: TemporalGraph, p: PatternGraph, delta: int, m: Match) -> VerifyResult:
    """Check a match against the three defining conditions, independently.

    1. structural: injective node mapping, one distinct graph edge per
       pattern edge, endpoints agree;
    2. temporal order preservation for every pair of pattern edges;
    3. duration within delta.
    """
    if len(m.node_map) != p.node_count or len(m.edge_assignment) != len(p.edges):
        raise ValueError("match shape does not fit the pattern")
    for pos in m.edge_assignment:
        if pos < 0 or pos >= len(g.records):
            raise ValueError(f"edge position {pos} out of range")
    violations: list[tuple[int, str]] = []

    if len(set(m.node_map)) != len(m.node_map):
        violations.append((1, "node mapping is not injective"))
    if len(set(m.edge_assignment)) != len(m.edge_assignment):
        violations.append((1, "a graph edge is assigned to two pattern edges"))
    for i, pe in enumerate(p.edges):
        ge = g.records[m.edge_assignment[i]].edge
        if ge.source != m.node_map[pe.source] or ge.target != m.node_map[pe.target]:
            violations.append((1, f"edge {i} endpoints disagree with the node mapping"))

    for i in range(len(p.edges)):
        for j in range(i + 1, len(p.edges)):
            ti, tj = p.edges[i].time, p.edges[j].time
            gi = g.times[m.edge_assignment[i]]
            gj = g.times[m.edge_assignment[j]]
            if ti < tj and not gi < gj:
                violations.append((2, f"edges {i},{j} must be strictly ordered"))
            elif ti == tj and gi != gj:
                violations.append((2, f"edges {i},{j} must be simultaneous"))
            elif ti > tj and not gi > gj:
                violations.append((2, f"edges {i},{j} must be strictly ordered"))

    times = [g.times[pos] for pos in m.edge_assignment]
    dur = max(times) - min(times) + 1
    if dur > delta:
        violations.append((3, f"dur={dur} exceeds delta={delta}"))
    return VerifyResult(tuple(violations))
