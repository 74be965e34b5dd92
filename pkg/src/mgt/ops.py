"""Graph operations that transform tau in closed form.

Each operation returns the new graph together with the predicted tau of the
result where a formula exists; verification code checks prediction against
direct recomputation, exactly. Vertex ids of results are renumbered
deterministically: the first operand's ids survive, then the second operand's
remaining ids in order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .circuit import context
from .errors import (
    BadN,
    BridgeDeletion,
    MgtError,
    NonPositiveLength,
    NotNormalized,
    SamePoint,
)
from .graph import Edge, MetrizedGraph, bridges, normalize, scale, total_length
from .rational import Scalar
from .tau import apq_identity, deleted_apq, tau_of


@dataclass(frozen=True)
class OpResult:
    graph: MetrizedGraph
    predicted_tau: Fraction | None
    formula_id: str
    unnormalized: MetrizedGraph | None = None
    notes: tuple[str, ...] = field(default_factory=tuple)


def _predict(formula_id, fn) -> tuple[Fraction | None, tuple[str, ...]]:
    try:
        return fn(), ()
    except MgtError as exc:
        return None, (f"prediction {formula_id} unavailable: {exc}",)


def delete_edge_graph(g: MetrizedGraph, edge_id: int) -> tuple[MetrizedGraph, tuple[int, int]]:
    """Graph minus one edge (must not be a bridge); endpoints keep their ids."""
    a, b, _ = g.edges[edge_id]
    rest = g.edges[:edge_id] + g.edges[edge_id + 1 :]
    try:
        return MetrizedGraph(g.vcount, rest), (a, b)
    except MgtError as exc:
        raise BridgeDeletion(f"deleting edge {edge_id} disconnects the graph") from exc


def delete_edge(g: MetrizedGraph, edge_id: int) -> OpResult:
    """Remove a non-bridge edge; tau drops by L/12 - R/6 + A/(L+R)."""
    a, b, length = g.edges[edge_id]
    if a != b and edge_id in bridges(g):
        raise BridgeDeletion(f"edge {edge_id} is a bridge")
    deleted, (pa, pb) = delete_edge_graph(g, edge_id)

    def formula():
        profile = context(g).edge_profiles(0)[edge_id]
        a_del = Fraction(0) if pa == pb else apq_identity(deleted, pa, pb)
        return (
            tau_of(g)
            - length / 12
            + profile.res_deleted / 6
            - a_del / (length + profile.res_deleted)
        )

    predicted, notes = _predict("edge-deletion", formula)
    return OpResult(deleted, predicted, "edge-deletion", notes=notes)


def _merge_vertices(g: MetrizedGraph, keep: int, drop: int) -> tuple[MetrizedGraph, int]:
    """Identify two distinct vertices; ids above the dropped one shift down."""
    remap = [v - 1 if v > drop else v for v in range(g.vcount)]
    remap[drop] = remap[keep]
    edges = tuple(Edge(remap[a], remap[b], L) for a, b, L in g.edges)
    return MetrizedGraph(g.vcount - 1, edges), remap[keep]


def contract_edge(g: MetrizedGraph, edge_id: int) -> OpResult:
    """Shrink an edge to a point.

    A self-loop contraction is its deletion (tau drops L/12); a bridge
    contraction drops L/4; otherwise tau drops L/12 - L A /(R(L+R)).
    """
    a, b, length = g.edges[edge_id]
    rest = g.edges[:edge_id] + g.edges[edge_id + 1 :]
    if a == b:
        graph = MetrizedGraph(g.vcount, rest)
        predicted, notes = _predict("loop-contraction", lambda: tau_of(g) - length / 12)
        return OpResult(graph, predicted, "loop-contraction", notes=notes)
    merged, _ = _merge_vertices(g, min(a, b), max(a, b))
    graph = MetrizedGraph(merged.vcount, merged.edges[:edge_id] + merged.edges[edge_id + 1 :])
    if edge_id in bridges(g):
        predicted, notes = _predict("bridge-contraction", lambda: tau_of(g) - length / 4)
        return OpResult(graph, predicted, "bridge-contraction", notes=notes)

    def formula():
        profile = context(g).edge_profiles(0)[edge_id]
        a_del = deleted_apq(g, edge_id)
        res = profile.res_deleted
        return tau_of(g) - length / 12 + length * a_del / (res * (length + res))

    predicted, notes = _predict("edge-contraction", formula)
    return OpResult(graph, predicted, "edge-contraction", notes=notes)


def identify_points_graph(g: MetrizedGraph, p: int, q: int) -> MetrizedGraph:
    """Just the glued graph, no tau prediction (used by the A identity route)."""
    if p == q:
        raise SamePoint("identify needs two distinct vertices")
    graph, _ = _merge_vertices(g, min(p, q), max(p, q))
    return graph


def identify_points(g: MetrizedGraph, p: int, q: int) -> OpResult:
    """Glue two distinct vertices; tau moves by -r/6 + A/r."""
    graph = identify_points_graph(g, p, q)

    def formula():
        r = context(g).r(p, q)
        return tau_of(g) - r / 6 + apq_identity(g, p, q) / r

    predicted, notes = _predict("point-identification", formula)
    return OpResult(graph, predicted, "point-identification", notes=notes)


def add_edge(g: MetrizedGraph, p: int, q: int, new_length: Scalar) -> OpResult:
    """Attach a fresh edge between two vertices (possibly equal)."""
    new_length = Fraction(new_length)
    if new_length <= 0:
        raise NonPositiveLength("new edge length must be positive")
    graph = MetrizedGraph(g.vcount, g.edges + (Edge(p, q, new_length),))

    def formula():
        if p == q:
            return tau_of(g) + new_length / 12
        r = context(g).r(p, q)
        a_val = apq_identity(g, p, q)
        return tau_of(g) + new_length / 12 - r / 6 + a_val / (new_length + r)

    predicted, notes = _predict("edge-addition", formula)
    return OpResult(graph, predicted, "edge-addition", notes=notes)


def _shift_graph(g2: MetrizedGraph, mapping: dict[int, int], offset: int) -> tuple[list[Edge], int]:
    """Relabel g2's vertices: pinned ids via mapping, the rest after offset."""
    remap: dict[int, int] = dict(mapping)
    nxt = offset
    for v in range(g2.vcount):
        if v not in remap:
            remap[v] = nxt
            nxt += 1
    return [Edge(remap[a], remap[b], L) for a, b, L in g2.edges], nxt


def union_one_point(g1: MetrizedGraph, p1: int, g2: MetrizedGraph, p2: int) -> OpResult:
    """One-point union; tau is additive across the wedge point."""
    edges2, vcount = _shift_graph(g2, {p2: p1}, g1.vcount)
    graph = MetrizedGraph(vcount, g1.edges + tuple(edges2))
    predicted, notes = _predict("wedge-additivity", lambda: tau_of(g1) + tau_of(g2))
    return OpResult(graph, predicted, "wedge-additivity", notes=notes)


def union_two_points(
    g1: MetrizedGraph, g2: MetrizedGraph,
    pq1: tuple[int, int], pq2: tuple[int, int],
) -> OpResult:
    """Union along two glued point pairs.

    tau(union) = tau1 + tau2 - (r1+r2)/6 + (A1+A2)/(r1+r2).
    """
    p1, q1 = pq1
    p2, q2 = pq2
    if p1 == q1 or p2 == q2:
        raise SamePoint("two-point union needs distinct glue points in each part")
    edges2, vcount = _shift_graph(g2, {p2: p1, q2: q1}, g1.vcount)
    graph = MetrizedGraph(vcount, g1.edges + tuple(edges2))

    def formula():
        r1 = context(g1).r(p1, q1)
        r2 = context(g2).r(p2, q2)
        a1 = apq_identity(g1, p1, q1)
        a2 = apq_identity(g2, p2, q2)
        return tau_of(g1) + tau_of(g2) - (r1 + r2) / 6 + (a1 + a2) / (r1 + r2)

    predicted, notes = _predict("two-point-union", formula)
    return OpResult(graph, predicted, "two-point-union", notes=notes)


def parallel_sum(g: MetrizedGraph) -> Fraction:
    """sum L^2/(L+R) over edges, with bridges contributing zero in the limit."""
    acc = Fraction(0)
    for profile in context(g).edge_profiles(0):
        if not profile.bridge:
            acc += profile.length**2 / (profile.length + profile.res_deleted)
    return acc


def da_n(g: MetrizedGraph, n: int) -> OpResult:
    """Replace every edge by n parallel edges of length L/n (total length fixed).

    tau becomes tau/n^2 + (L/12)((n-1)/n)^2 + ((n-1)/(6n^2)) sum L^2/(L+R).
    """
    if n < 1:
        raise BadN("parallel multiplicity must be >= 1")
    edges = []
    for a, b, length in g.edges:
        edges += [Edge(a, b, length / n)] * n
    graph = MetrizedGraph(g.vcount, tuple(edges))

    def formula():
        ell = total_length(g)
        return (
            tau_of(g) / n**2
            + ell / 12 * Fraction(n - 1, n) ** 2
            + Fraction(n - 1, 6 * n**2) * parallel_sum(g)
        )

    predicted, notes = _predict("parallel-split", formula)
    return OpResult(graph, predicted, "parallel-split", notes=notes)


def immerse(
    g: MetrizedGraph,
    betas: list[tuple[MetrizedGraph, int, int]],
) -> OpResult:
    """Replace each edge of a normalized graph by a scaled marked graph.

    Edge i becomes a copy of beta_i scaled so the resistance between its two
    marked vertices equals the edge length; endpoint a of the edge lands on
    the first marked vertex. Returns the normalized result (the unnormalized
    product graph rides along), with the predicted normalized tau.
    """
    if total_length(g) != 1:
        raise NotNormalized("the host graph must have total length one")
    if len(betas) != g.ecount:
        raise MgtError("need one marked graph per edge")
    for beta, p, q in betas:
        if total_length(beta) != 1:
            raise NotNormalized("every replacement graph must have total length one")
        if p == q:
            raise SamePoint("marked points must be distinct")
    edges: list[Edge] = []
    nxt = g.vcount
    for (a, b, length), (beta, p, q) in zip(g.edges, betas):
        r_beta = context(beta).r(p, q)
        factor = length / r_beta
        shifted, nxt = _shift_graph(beta, {p: a, q: b}, nxt)
        edges += [Edge(ea, eb, L * factor) for ea, eb, L in shifted]
    raw = MetrizedGraph(nxt, tuple(edges))
    graph = normalize(raw)

    def formula():
        host = context(g)
        profiles = host.edge_profiles(0)
        size = Fraction(0)
        rhs = tau_of(g) - Fraction(1, 4)
        for (a, b, length), (beta, p, q), profile in zip(g.edges, betas, profiles):
            r_beta = context(beta).r(p, q)
            size += length / r_beta
            rhs += length * tau_of(beta) / r_beta
            if not profile.bridge:
                a_beta = apq_identity(beta, p, q)
                rhs += length**2 * a_beta / ((length + profile.res_deleted) * r_beta**2)
        return rhs / size

    predicted, notes = _predict("edge-immersion", formula)
    return OpResult(graph, predicted, "edge-immersion", unnormalized=raw, notes=notes)


def immerse_uniform(g: MetrizedGraph, beta: MetrizedGraph, p: int, q: int) -> OpResult:
    """Immerse the same marked graph into every edge."""
    return immerse(g, [(beta, p, q)] * g.ecount)


def immerse_any(g: MetrizedGraph, betas: list[tuple[MetrizedGraph, int, int]]) -> OpResult:
    """Convenience wrapper that normalizes all inputs first and records it."""
    notes = []
    if total_length(g) != 1:
        notes.append(f"host scaled by {1 / total_length(g)}")
        g = normalize(g)
    fixed = []
    for beta, p, q in betas:
        if total_length(beta) != 1:
            notes.append(f"replacement scaled by {1 / total_length(beta)}")
            beta = normalize(beta)
        fixed.append((beta, p, q))
    result = immerse(g, fixed)
    return OpResult(result.graph, result.predicted_tau, result.formula_id,
                    result.unnormalized, result.notes + tuple(notes))


def c_tower(g: MetrizedGraph, p: int, q: int, n: int) -> OpResult:
    """Union of 2^n copies of a normalized graph along p, q, then normalized.

    Predicted tau: tau + (1 - 2^-n) A/r + (-1/6 - 1/(6 2^n) + 1/(3 4^n)) r.
    """
    if p == q:
        raise SamePoint("tower points must be distinct")
    if n < 1:
        raise BadN("tower exponent must be >= 1")
    if total_length(g) != 1:
        raise NotNormalized("tower input must have total length one")
    current = g
    for _ in range(n):
        current = union_two_points(current, current, (p, q), (p, q)).graph
    graph = normalize(current)

    def formula():
        r = context(g).r(p, q)
        a_val = apq_identity(g, p, q)
        half = Fraction(1, 2**n)
        coeff = -Fraction(1, 6) - half / 6 + Fraction(1, 3 * 4**n)
        return tau_of(g) + (1 - half) * a_val / r + coeff * r

    predicted, notes = _predict("two-point-tower", formula)
    return OpResult(graph, predicted, "two-point-tower", unnormalized=current, notes=notes)


def simplify_valence2(g: MetrizedGraph, protected: tuple[int, ...] = ()) -> MetrizedGraph:
    """Series-merge unprotected valence-2 vertices (tau and resistances unchanged)."""
    vertices = list(range(g.vcount))
    edges = list(g.edges)
    protect = set(protected)
    changed = True
    while changed:
        changed = False
        for v in vertices:
            if v in protect:
                continue
            incident = [(i, e) for i, e in enumerate(edges) if v in (e.a, e.b)]
            if len(incident) != 2 or any(e.a == e.b for _, e in incident):
                continue
            if len(vertices) == 1:
                continue
            (i1, e1), (i2, e2) = incident
            u = e1.a if e1.b == v else e1.b
            w = e2.a if e2.b == v else e2.b
            merged = Edge(u, w, e1.length + e2.length)
            edges = [e for i, e in enumerate(edges) if i not in (i1, i2)]
            edges.insert(min(i1, i2), merged)
            vertices.remove(v)
            changed = True
            break
    remap = {old: new for new, old in enumerate(vertices)}
    return MetrizedGraph(len(vertices), tuple(Edge(remap[a], remap[b], L) for a, b, L in edges))
