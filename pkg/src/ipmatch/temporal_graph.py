"""Time-ordered temporal graph representation.

A temporal graph here is a directed multigraph whose edges carry integer
timestamps.  The whole graph is stored as one flat edge list sorted by
(time, source label, target label, input sequence).  Each edge record
carries four next-in-time links (next edge sharing this edge's source or
target node, as source or as target), and the graph keeps per-node entry
points, so all in- or out-edges of a node can be visited in time order
without scanning the full list.

Graphs are immutable after construction and safe for unrestricted
concurrent read access.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence


class EmptyGraphError(ValueError):
    """Raised when a graph is built from no edges and no declared nodes."""


class GraphBuildError(ValueError):
    """Raised for malformed labels or timestamps, naming the offending entry."""


class DurationUndefinedError(ValueError):
    """Raised when the duration of an empty edge set is requested."""


@dataclass(frozen=True, slots=True)
class TemporalEdge:
    """One timestamped directed interaction.

    ``input_seq`` is the position of the edge in the original input and is
    used only to break ties among otherwise identical sort keys.
    """

    source: int
    target: int
    time: int
    input_seq: int


@dataclass(frozen=True, slots=True)
class EdgeRecord:
    """An edge plus its four next-in-time links.

    Each link, when present, is the position (index into the sorted edge
    list) of the next edge whose source/target equals this edge's
    source/target node.  All links point strictly forward.
    """

    edge: TemporalEdge
    next_src_out: Optional[int]  # next edge with source == this.source
    next_src_in: Optional[int]  # next edge with target == this.source
    next_tgt_out: Optional[int]  # next edge with source == this.target
    next_tgt_in: Optional[int]  # next edge with target == this.target


@dataclass(frozen=True, slots=True)
class StaticGraph:
    """Timestamp-free projection: one directed edge per connected node pair."""

    node_count: int
    edges: frozenset[tuple[int, int]]


class TemporalGraph:
    """Flat time-ordered edge list with link index and symbol table.

    Do not mutate any attribute after construction; use :func:`build_graph`.
    """

    __slots__ = (
        "records",
        "node_count",
        "labels",
        "label_index",
        "first_out",
        "first_in",
        "multiplicity",
        "times",
        "out_positions",
        "in_positions",
    )

    def __init__(
        self,
        records: list[EdgeRecord],
        labels: list[str],
        label_index: dict[str, int],
        first_out: list[Optional[int]],
        first_in: list[Optional[int]],
        multiplicity: dict[tuple[int, int], list[int]],
        out_positions: list[list[int]],
        in_positions: list[list[int]],
    ):
        self.records = records
        self.labels = labels
        self.label_index = label_index
        self.node_count = len(labels)
        self.first_out = first_out
        self.first_in = first_in
        self.multiplicity = multiplicity
        self.times = tuple(r.edge.time for r in records)
        self.out_positions = out_positions
        self.in_positions = in_positions

    def __len__(self) -> int:
        return len(self.records)

    def __repr__(self) -> str:
        return f"TemporalGraph(nodes={self.node_count}, edges={len(self.records)})"

    def node_id(self, label: str) -> int:
        return self.label_index[str(label)]

    def node_label(self, node: int) -> str:
        return self.labels[node]

    def edge_at(self, pos: int) -> TemporalEdge:
        return self.records[pos].edge

    def block_start(self, t: int) -> int:
        """Position of the first record with time >= t."""
        return bisect.bisect_left(self.times, t)

    def next_out(self, node: int, after: Optional[int] = None) -> Optional[int]:
        """Smallest position > ``after`` whose edge has source ``node``.

        ``after=None`` means "before the start", i.e. the node's first
        occurrence as a source.  Found by following the out links, so the
        cost is the number of out-edges of ``node`` up to ``after``.
        """
        pos = self.first_out[node]
        if after is None:
            return pos
        while pos is not None and pos <= after:
            pos = self.records[pos].next_src_out
        return pos

    def next_in(self, node: int, after: Optional[int] = None) -> Optional[int]:
        """Dual of :meth:`next_out` for edges with target ``node``."""
        pos = self.first_in[node]
        if after is None:
            return pos
        while pos is not None and pos <= after:
            pos = self.records[pos].next_tgt_in
        return pos

    def iter_out(self, node: int) -> Iterator[int]:
        """Positions of all edges with source ``node``, in list order."""
        pos = self.first_out[node]
        while pos is not None:
            yield pos
            pos = self.records[pos].next_src_out

    def iter_in(self, node: int) -> Iterator[int]:
        """Positions of all edges with target ``node``, in list order."""
        pos = self.first_in[node]
        while pos is not None:
            yield pos
            pos = self.records[pos].next_tgt_in

    def export_edges(self) -> list[tuple[str, str, int]]:
        """Label triples in list order; rebuilding from them reproduces the graph."""
        return [
            (self.labels[r.edge.source], self.labels[r.edge.target], r.edge.time)
            for r in self.records
        ]


def _check_label(raw, entry: int) -> str:
    label = str(raw)
    if not label or any(ch.isspace() for ch in label):
        raise GraphBuildError(f"edge {entry}: malformed label {raw!r}")
    return label


def _check_time(raw, entry: int) -> int:
    # bool is an int subclass but makes no sense as a timestamp
    if isinstance(raw, bool) or not isinstance(raw, int):
        raise GraphBuildError(
            f"edge {entry}: timestamp {raw!r} is not an integer"
        )
    return raw


def build_graph(
    edges: Sequence[tuple],
    isolated_nodes: Iterable = (),
) -> TemporalGraph:
    """Build a :class:`TemporalGraph` from (source, target, time) triples.

    Duplicate triples are retained as distinct parallel edges.  Labels may
    be strings or integers; they are interned into dense node ids in order
    of first appearance.  ``isolated_nodes`` declares extra nodes that
    carry no edges (they only affect the node count and projection).
    """
    edges = list(edges)
    isolated = list(isolated_nodes)
    if not edges and not isolated:
        raise EmptyGraphError("cannot build a graph from an empty edge list")

    label_index: dict[str, int] = {}
    labels: list[str] = []

    def intern(label: str) -> int:
        node = label_index.get(label)
        if node is None:
            node = len(labels)
            label_index[label] = node
            labels.append(label)
        return node

    # Sort key uses the external labels so that exporting and rebuilding
    # reproduces the exact record order regardless of id assignment.
    keyed = []
    for seq, item in enumerate(edges):
        if len(item) != 3:
            raise GraphBuildError(f"edge {seq}: expected 3 fields, got {len(item)}")
        u, v, t = item
        su, sv = _check_label(u, seq), _check_label(v, seq)
        keyed.append((_check_time(t, seq), su, sv, seq))
        intern(su)
        intern(sv)
    for raw in isolated:
        intern(_check_label(raw, -1))

    keyed.sort()

    n = len(keyed)
    nv = len(labels)
    sources = [label_index[k[1]] for k in keyed]
    targets = [label_index[k[2]] for k in keyed]

    # Backward pass: next position (strictly after i) where a node occurs
    # as source / as target.
    next_as_src: list[Optional[int]] = [None] * nv
    next_as_tgt: list[Optional[int]] = [None] * nv
    links: list[tuple] = [()] * n
    for i in range(n - 1, -1, -1):
        u, v = sources[i], targets[i]
        links[i] = (next_as_src[u], next_as_tgt[u], next_as_src[v], next_as_tgt[v])
        next_as_src[u] = i
        next_as_tgt[v] = i
    first_out = list(next_as_src)
    first_in = list(next_as_tgt)

    multiplicity: dict[tuple[int, int], list[int]] = {}
    out_positions: list[list[int]] = [[] for _ in range(nv)]
    in_positions: list[list[int]] = [[] for _ in range(nv)]
    records: list[EdgeRecord] = []
    for i, (t, _, _, seq) in enumerate(keyed):
        u, v = sources[i], targets[i]
        records.append(EdgeRecord(TemporalEdge(u, v, t, seq), *links[i]))
        multiplicity.setdefault((u, v), []).append(i)
        out_positions[u].append(i)
        in_positions[v].append(i)

    return TemporalGraph(
        records, labels, label_index, first_out, first_in,
        multiplicity, out_positions, in_positions,
    )


def _times_of(obj) -> list[int]:
    if isinstance(obj, TemporalGraph):
        return list(obj.times)
    times = []
    for item in obj:
        if isinstance(item, int):
            times.append(item)
        elif isinstance(item, EdgeRecord):
            times.append(item.edge.time)
        elif isinstance(item, TemporalEdge):
            times.append(item.time)
        else:
            times.append(item.time)  # anything with a .time attribute
    return times


def duration(obj) -> int:
    """Latest minus earliest timestamp plus one, over a graph or edge set."""
    times = _times_of(obj)
    if not times:
        raise DurationUndefinedError("duration of an empty edge set is undefined")
    return max(times) - min(times) + 1


def static_projection(g: TemporalGraph) -> StaticGraph:
    """Drop timestamps and collapse parallel edges."""
    return StaticGraph(g.node_count, frozenset(g.multiplicity.keys()))
