"""Metrized graphs: finite connected multigraphs with positive rational edge lengths.

A graph is immutable once built. Vertices are dense integers ``0..v-1``; edge
ids are positions in the construction-order edge list. Endpoint order per edge
is fixed at construction and is meaningful: several formulas distinguish the
two ends of an edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence, Union

from .errors import (
    BadM,
    BadPoint,
    BadVertexId,
    DisconnectedGraph,
    NonPositiveLength,
    NonPositiveScale,
)
from .rational import Scalar


class Edge(NamedTuple):
    a: int
    b: int
    length: Fraction


# Either a vertex id or (edge id, offset from endpoint a).
PointOnGraph = Union[int, tuple[int, Fraction]]


@dataclass(frozen=True)
class MetrizedGraph:
    vcount: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if self.vcount < 1:
            raise BadVertexId("graph needs at least one vertex")
        for i, (a, b, length) in enumerate(self.edges):
            if not (0 <= a < self.vcount and 0 <= b < self.vcount):
                raise BadVertexId(f"edge {i} endpoint out of range")
            if length <= 0:
                raise NonPositiveLength(f"edge {i} has non-positive length {length}")
        if not _connected(self.vcount, self.edges):
            raise DisconnectedGraph("graph is not connected")

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.vcount, self.edges))
            object.__setattr__(self, "_hash", h)
        return h

    @property
    def ecount(self) -> int:
        return len(self.edges)

    def valence(self, p: int) -> int:
        """Number of edge directions emanating from p (a self-loop counts twice)."""
        n = 0
        for a, b, _ in self.edges:
            if a == p:
                n += 1
            if b == p:
                n += 1
        return n

    def incident(self, p: int) -> list[int]:
        return [i for i, (a, b, _) in enumerate(self.edges) if a == p or b == p]


def _connected(vcount: int, edges: Sequence[Edge], skip: int | None = None) -> bool:
    if vcount == 1:
        return True
    adj: list[list[int]] = [[] for _ in range(vcount)]
    for i, (a, b, _) in enumerate(edges):
        if i == skip:
            continue
        adj[a].append(b)
        adj[b].append(a)
    seen = [False] * vcount
    stack = [0]
    seen[0] = True
    found = 1
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if not seen[w]:
                seen[w] = True
                found += 1
                stack.append(w)
    return found == vcount


def build_graph(vertex_count: int, edge_list: Iterable[tuple[int, int, Scalar]]) -> MetrizedGraph:
    """Build a connected metrized graph; edge order is preserved."""
    edges = tuple(Edge(a, b, Fraction(length)) for a, b, length in edge_list)
    return MetrizedGraph(vertex_count, edges)


def total_length(g: MetrizedGraph) -> Fraction:
    return sum((e.length for e in g.edges), Fraction(0))


def genus(g: MetrizedGraph) -> int:
    """First Betti number e - v + 1 of the (connected) graph."""
    return g.ecount - g.vcount + 1


def scale(g: MetrizedGraph, c: Scalar) -> MetrizedGraph:
    c = Fraction(c)
    if c <= 0:
        raise NonPositiveScale(f"scale factor must be positive, got {c}")
    return MetrizedGraph(g.vcount, tuple(Edge(a, b, length * c) for a, b, length in g.edges))


def normalize(g: MetrizedGraph) -> MetrizedGraph:
    """Rescale to total length one."""
    return scale(g, 1 / total_length(g))


def normalize_point(g: MetrizedGraph, x: PointOnGraph) -> PointOnGraph:
    """Canonical form of a point: endpoint offsets collapse to the vertex itself."""
    if isinstance(x, int):
        if not 0 <= x < g.vcount:
            raise BadPoint(f"vertex {x} out of range")
        return x
    edge_id, offset = x
    if not 0 <= edge_id < g.ecount:
        raise BadPoint(f"edge {edge_id} out of range")
    offset = Fraction(offset)
    edge = g.edges[edge_id]
    if offset < 0 or offset > edge.length:
        raise BadPoint(f"offset {offset} outside edge of length {edge.length}")
    if offset == 0:
        return edge.a
    if offset == edge.length:
        return edge.b
    return (edge_id, offset)


def insert_point(g: MetrizedGraph, x: PointOnGraph) -> tuple[MetrizedGraph, int]:
    """Promote a point to a vertex.

    An interior point of edge (u, w, L) at offset t splits the edge into
    (u, new, t) and (new, w, L-t), placed consecutively at the old edge's
    position. Inserting at an existing vertex returns that vertex unchanged.
    """
    x = normalize_point(g, x)
    if isinstance(x, int):
        return g, x
    edge_id, offset = x
    u, w, length = g.edges[edge_id]
    new = g.vcount
    edges = (
        g.edges[:edge_id]
        + (Edge(u, new, offset), Edge(new, w, length - offset))
        + g.edges[edge_id + 1 :]
    )
    return MetrizedGraph(g.vcount + 1, edges), new


def insert_points(g: MetrizedGraph, points: Sequence[PointOnGraph]) -> tuple[MetrizedGraph, list[int]]:
    """Insert several points, tracking how earlier splits shift later ones."""
    staged = [normalize_point(g, x) for x in points]
    order = sorted(
        (i for i, x in enumerate(staged) if not isinstance(x, int)),
        key=lambda i: (staged[i][0], staged[i][1]),
    )
    ids: list[int | None] = [x if isinstance(x, int) else None for x in staged]
    shift = 0  # edges inserted so far
    prev_edge = None
    consumed = Fraction(0)
    current = g
    for i in order:
        edge_id, offset = staged[i]
        if edge_id != prev_edge:
            consumed = Fraction(0)
        if edge_id == prev_edge and offset == consumed:  # duplicate point
            ids[i] = current.vcount - 1
            continue
        current, vid = insert_point(current, (edge_id + shift, offset - consumed))
        ids[i] = vid
        shift += 1
        prev_edge = edge_id
        consumed = offset
    assert all(v is not None for v in ids)
    return current, ids  # type: ignore[return-value]


def subdivide_uniform(g: MetrizedGraph, m: int) -> MetrizedGraph:
    """Divide every edge into m equal pieces; total length is unchanged."""
    if m < 1:
        raise BadM(f"subdivision count must be >= 1, got {m}")
    if m == 1:
        return g
    edges: list[Edge] = []
    next_vertex = g.vcount
    for a, b, length in g.edges:
        piece = length / m
        prev = a
        for k in range(m - 1):
            edges.append(Edge(prev, next_vertex, piece))
            prev = next_vertex
            next_vertex += 1
        edges.append(Edge(prev, b, piece))
    return MetrizedGraph(next_vertex, tuple(edges))


def bridges(g: MetrizedGraph) -> list[int]:
    """Edge ids whose deletion disconnects the graph.

    Iterative lowlink search over edge ids, so parallel edges and self-loops
    are handled naturally (neither can be a bridge).
    """
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.vcount)]
    for i, (a, b, _) in enumerate(g.edges):
        adj[a].append((b, i))
        adj[b].append((a, i))
    disc = [-1] * g.vcount
    low = [0] * g.vcount
    result: list[int] = []
    counter = 0
    for root in range(g.vcount):
        if disc[root] != -1:
            continue
        stack: list[tuple[int, int, int]] = [(root, -1, 0)]  # (vertex, entry edge, next index)
        disc[root] = low[root] = counter
        counter += 1
        while stack:
            u, entry_edge, idx = stack.pop()
            if idx < len(adj[u]):
                stack.append((u, entry_edge, idx + 1))
                w, eid = adj[u][idx]
                if eid == entry_edge or w == u:
                    continue
                if disc[w] == -1:
                    disc[w] = low[w] = counter
                    counter += 1
                    stack.append((w, eid, 0))
                else:
                    low[u] = min(low[u], disc[w])
            elif entry_edge != -1:
                a, b, _ = g.edges[entry_edge]
                parent = a if disc[a] < disc[b] else b
                child = b if parent == a else a
                low[parent] = min(low[parent], low[child])
                if low[child] > disc[parent]:
                    result.append(entry_edge)
    return sorted(result)


def point_location(g: MetrizedGraph, x: PointOnGraph) -> str:
    x = normalize_point(g, x)
    return f"v{x}" if isinstance(x, int) else f"e{x[0]}@{x[1]}"
