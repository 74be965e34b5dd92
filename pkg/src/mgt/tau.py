"""The tau invariant, canonical measure, the voltage integral A, and bounds.

tau is computed as an exact per-edge rational sum from edge profiles; bridges
contribute length/4 (the limit of the summand as the deleted resistance grows
without bound) and self-loops length/12.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .circuit import EdgeProfile, context
from .errors import HasBridge, SamePoint
from .graph import MetrizedGraph, bridges, genus, normalize, total_length
from .rational import ExtScalar, Scalar


@dataclass(frozen=True)
class TauReport:
    tau: Fraction
    total_length: Fraction
    genus: int
    per_edge: tuple[tuple[int, Fraction, ExtScalar], ...]  # (edge, contribution, deleted resistance)
    base_vertex: int


@dataclass(frozen=True)
class CanonicalMeasure:
    vertex_masses: tuple[tuple[int, Fraction], ...]
    edge_densities: tuple[tuple[int, Fraction], ...]

    def total_mass(self, g: MetrizedGraph) -> Fraction:
        mass = sum(m for _, m in self.vertex_masses)
        for edge_id, density in self.edge_densities:
            mass += density * g.edges[edge_id].length
        return mass


@dataclass(frozen=True)
class GradientVector:
    entries: tuple[Fraction, ...]
    bridge_edges: tuple[int, ...]  # edges reported with the tree-like derivative 1/4


def edge_tau_contribution(profile: EdgeProfile) -> Fraction:
    """One edge's share of tau: (L^3 + 3L(arm_a - arm_b)^2) / (12 (L+R)^2)."""
    length = profile.length
    if profile.bridge:
        return length / 4
    diff = profile.arm_a - profile.arm_b
    denom = length + profile.res_deleted
    return (length**3 + 3 * length * diff * diff) / (12 * denom * denom)


def weighted_arm_diff_sq(profile: EdgeProfile) -> Fraction:
    """L (arm_a - arm_b)^2 / (L+R)^2, with limit L across a bridge."""
    if profile.bridge:
        return profile.length
    diff = profile.arm_a - profile.arm_b
    denom = profile.length + profile.res_deleted
    return profile.length * diff * diff / (denom * denom)


def weighted_res_sq(profile: EdgeProfile) -> Fraction:
    """L R^2 / (L+R)^2, with limit L across a bridge."""
    if profile.bridge:
        return profile.length
    ratio = profile.res_deleted / (profile.length + profile.res_deleted)
    return profile.length * ratio * ratio


def weighted_res(profile: EdgeProfile) -> Fraction:
    """L R / (L+R), with limit L across a bridge."""
    if profile.bridge:
        return profile.length
    return profile.length * profile.res_deleted / (profile.length + profile.res_deleted)


def cubic_sum(g: MetrizedGraph) -> Fraction:
    """sum L^3/(L+R)^2 over edges; across a bridge the summand tends to zero."""
    acc = Fraction(0)
    for profile in context(g).edge_profiles(0):
        if not profile.bridge:
            denom = profile.length + profile.res_deleted
            acc += profile.length**3 / (denom * denom)
    return acc


def tau_edge_sum(g: MetrizedGraph, base: int = 0) -> TauReport:
    """tau via the per-edge sum relative to a base vertex (value is base-free)."""
    ctx = context(g)
    per_edge = []
    tau = Fraction(0)
    for profile in ctx.edge_profiles(base):
        c = edge_tau_contribution(profile)
        tau += c
        per_edge.append((profile.edge, c, profile.res_deleted))
    return TauReport(tau, total_length(g), genus(g), tuple(per_edge), base)


def tau_of(g: MetrizedGraph) -> Fraction:
    """Memoized tau value."""
    ctx = context(g)
    value = ctx.memo.get("tau")
    if value is None:
        value = tau_edge_sum(g).tau
        ctx.memo["tau"] = value
    return value


def canonical_measure(g: MetrizedGraph) -> CanonicalMeasure:
    """Point masses 1 - valence/2 plus density 1/(L+R) per edge (0 on bridges)."""
    ctx = context(g)
    masses = tuple((v, 1 - Fraction(g.valence(v), 2)) for v in range(g.vcount))
    densities = []
    for profile in ctx.edge_profiles(0):
        if profile.bridge:
            densities.append((profile.edge, Fraction(0)))
        else:
            densities.append((profile.edge, 1 / (profile.length + profile.res_deleted)))
    return CanonicalMeasure(masses, tuple(densities))


def genus_identity_check(g: MetrizedGraph) -> tuple[Fraction, Fraction]:
    """(sum L/(L+R), sum R/(L+R)); equals (genus, v-1), bridges giving (0, 1)."""
    ctx = context(g)
    left = Fraction(0)
    right = Fraction(0)
    for profile in ctx.edge_profiles(0):
        if profile.bridge:
            right += 1
        else:
            denom = profile.length + profile.res_deleted
            left += profile.length / denom
            right += profile.res_deleted / denom
    return left, right


def apq_identity(g: MetrizedGraph, p: int, q: int) -> Fraction:
    """The voltage integral A via two tau evaluations and one resistance.

    A = r(p,q) (tau(identified) - tau) + r(p,q)^2 / 6, where "identified"
    glues p to q. Cheaper than integrating, and an independent oracle for the
    direct route.
    """
    if p == q:
        raise SamePoint("p and q must differ")
    ctx = context(g)
    key = ("apq", p, q)
    value = ctx.memo.get(key)
    if value is not None:
        return value
    from .ops import identify_points_graph  # late import; ops depends on this module

    r = ctx.r(p, q)
    glued = identify_points_graph(g, p, q)
    value = r * (tau_of(glued) - tau_of(g)) + r * r / 6
    ctx.memo[key] = value
    return value


def apq_checked(g: MetrizedGraph, p: int, q: int) -> Fraction:
    """A by both routes with exact agreement asserted."""
    from .errors import MgtError
    from .integration import apq_direct

    via_identity = Fraction(0) if p == q else apq_identity(g, p, q)
    via_integral = apq_direct(g, p, q)
    if via_identity != via_integral:
        raise MgtError(
            f"A mismatch at ({p},{q}): identity {via_identity} vs integral {via_integral}"
        )
    return via_identity


def deleted_apq(g: MetrizedGraph, edge_id: int) -> Fraction:
    """A between an edge's endpoints inside the deleted graph (edge not a bridge)."""
    from .ops import delete_edge_graph

    a, b, _ = g.edges[edge_id]
    if a == b:
        return Fraction(0)
    deleted, (pa, pb) = delete_edge_graph(g, edge_id)
    return apq_identity(deleted, pa, pb)


def tau_gradient(g: MetrizedGraph) -> GradientVector:
    """Exact partial derivatives of tau in each edge length.

    Non-bridge edges: 1/12 - A/(L+R)^2 with A taken in the deleted graph.
    Bridges are flagged and reported with derivative 1/4, since contracting
    them splits tau additively into (bridge length)/4 plus the rest.
    """
    ctx = context(g)
    profiles = ctx.edge_profiles(0)
    entries = []
    bridge_ids = []
    for profile in profiles:
        if profile.bridge:
            entries.append(Fraction(1, 4))
            bridge_ids.append(profile.edge)
        elif profile.loop:
            entries.append(Fraction(1, 12))
        else:
            a_del = deleted_apq(g, profile.edge)
            denom = profile.length + profile.res_deleted
            entries.append(Fraction(1, 12) - a_del / (denom * denom))
    return GradientVector(tuple(entries), tuple(bridge_ids))


def tau_bridgeless_identity(g: MetrizedGraph) -> tuple[Fraction, Fraction]:
    """(tau, L/12 - sum L_i A_i / (L_i+R_i)^2); the two sides must agree exactly."""
    if bridges(g):
        raise HasBridge("identity requires a bridgeless graph")
    ctx = context(g)
    acc = total_length(g) / 12
    for profile in ctx.edge_profiles(0):
        if profile.loop:
            continue
        a_del = deleted_apq(g, profile.edge)
        denom = profile.length + profile.res_deleted
        acc -= profile.length * a_del / (denom * denom)
    return tau_of(g), acc


@dataclass(frozen=True)
class BoundCheck:
    bound: str
    applicable: bool
    reason: str
    lhs: Fraction | None
    rhs: Fraction | None
    relation: str
    holds: bool | None


def lower_bound_suite(g: MetrizedGraph) -> list[BoundCheck]:
    """Evaluate the closed-form tau bounds that apply to this graph, exactly.

    The graph is normalized first (every bound here is scale-covariant), and
    bounds whose hypotheses fail are reported as skipped with the reason.
    """
    gn = normalize(g)
    ctx = context(gn)
    profiles = ctx.edge_profiles(0)
    tau = tau_of(gn)
    e = gn.ecount
    v = gn.vcount
    gen = genus(gn)
    bridge_free = not bridges(gn)
    equal_lengths = len({edge.length for edge in gn.edges}) == 1
    out = [
        BoundCheck("tau-upper-quarter", True, "", tau, Fraction(1, 4), "<=", tau <= Fraction(1, 4)),
        BoundCheck("tau-lower-1-16e", True, "", Fraction(1, 16 * e), tau, "<=", Fraction(1, 16 * e) <= tau),
        BoundCheck("tau-tree-equality", True, "",
                   tau, Fraction(1, 4), "== iff tree",
                   (tau == Fraction(1, 4)) == (gen == 0 and not any(a == b for a, b, _ in gn.edges))),
    ]
    if bridge_free:
        out.append(BoundCheck("tau-upper-twelfth-bridgeless", True, "", tau, Fraction(1, 12), "<=",
                              tau <= Fraction(1, 12)))
    else:
        out.append(BoundCheck("tau-upper-twelfth-bridgeless", False, "graph has a bridge",
                              None, None, "<=", None))
    if equal_lengths:
        base = Fraction(gen, e) ** 2 / 12
        out.append(BoundCheck("equal-length", True, "", base, tau, "<=", base <= tau))
        better = base + Fraction(1, 2 * v) * Fraction(v - 1, e) ** 2
        out.append(BoundCheck("equal-length-sharper", True, "", better, tau, "<=", better <= tau))
    else:
        for name in ("equal-length", "equal-length-sharper"):
            out.append(BoundCheck(name, False, "edge lengths not all equal", None, None, "<=", None))
    if bridge_free:
        sum_r = sum((p.res_deleted for p in profiles), Fraction(0))
        bound = 1 / (12 * (1 + sum_r) ** 2)
        out.append(BoundCheck("deleted-resistance-sum", True, "", bound, tau, "<=", bound <= tau))
    else:
        out.append(BoundCheck("deleted-resistance-sum", False,
                              "a bridge makes the deleted-resistance sum infinite",
                              None, None, "<=", None))
    if _every_pair_doubled(gn):
        out.append(BoundCheck("doubled-edges-1-48", True, "", Fraction(1, 48), tau, "<=",
                              Fraction(1, 48) <= tau))
    else:
        out.append(BoundCheck("doubled-edges-1-48", False,
                              "some endpoint pair is joined by only one edge",
                              None, None, "<=", None))
    lhs = Fraction(0)
    rhs_inner = Fraction(0)
    for p in profiles:
        frac_r = Fraction(1) if p.bridge else p.res_deleted / (p.length + p.res_deleted)
        lhs += p.length * frac_r * frac_r
        rhs_inner += p.length * frac_r
    out.append(BoundCheck("weighted-deleted-square", True, "", rhs_inner**2, lhs, "<=",
                          rhs_inner**2 <= lhs))
    return out


def _every_pair_doubled(g: MetrizedGraph) -> bool:
    counts: dict[frozenset, int] = {}
    for a, b, _ in g.edges:
        if a != b:
            counts[frozenset((a, b))] = counts.get(frozenset((a, b)), 0) + 1
    return bool(counts) and all(n >= 2 for n in counts.values())
