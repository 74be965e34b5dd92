"""Randomized verification harness: every supported identity as an exact check.

Each catalog entry turns one closed-form identity or inequality into an
executable zero-tolerance check over a generated graph. A check either passes
(exact rational equality / comparison), fails, or is skipped because the
identity's hypothesis does not hold on the instance; skips always carry the
reason. Constructions that would grow quadratically also skip, with the size
recorded, once they exceed a small desk-scale budget.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import families
from .circuit import context
from .errors import MgtError
from .graph import MetrizedGraph, bridges, genus, insert_point, normalize, scale, subdivide_uniform, total_length
from .integration import (
    TAG_J_BASE_P,
    TAG_J_BASE_Q,
    TAG_J_BASE_X,
    TAG_R_FROM_P,
    apq_direct,
    integrate_product,
    tau_via_integral,
)
from .ops import (
    add_edge,
    c_tower,
    contract_edge,
    da_n,
    delete_edge,
    delete_edge_graph,
    identify_points,
    identify_points_graph,
    immerse,
    immerse_uniform,
    parallel_sum,
    union_one_point,
    union_two_points,
)
from .reduction import resistance_via_reduction, voltage_via_reduction
from .tau import (
    apq_checked,
    apq_identity,
    canonical_measure,
    cubic_sum,
    genus_identity_check,
    tau_bridgeless_identity,
    tau_edge_sum,
    tau_of,
    weighted_arm_diff_sq,
    weighted_res,
    weighted_res_sq,
)

MAX_BUILT_EDGES = 72
MAX_BUILT_VERTICES = 28


@dataclass(frozen=True)
class CheckResult:
    identity: str
    graph: str
    lhs: object
    rhs: object
    status: str  # pass | fail | skip
    reason: str = ""

    @property
    def ok(self) -> bool:
        return self.status != "fail"


class SuiteContext:
    """One corpus graph plus the deterministic randomness for its checks."""

    def __init__(self, descriptor: str, g: MetrizedGraph, rng: random.Random):
        self.descriptor = descriptor
        self.g = g
        self.rng = rng
        self._bridges = None

    @property
    def bridges(self) -> list[int]:
        if self._bridges is None:
            self._bridges = bridges(self.g)
        return self._bridges

    def vertex_pair(self) -> tuple[int, int]:
        v = self.g.vcount
        if v < 2:
            return 0, 0
        p = self.rng.randrange(v)
        q = self.rng.randrange(v - 1)
        if q >= p:
            q += 1
        return p, q

    def proper_edge(self, avoid_bridges: bool = True) -> int | None:
        """A non-loop edge, optionally also not a bridge."""
        banned = set(self.bridges) if avoid_bridges else set()
        ids = [i for i, (a, b, _) in enumerate(self.g.edges) if a != b and i not in banned]
        return self.rng.choice(ids) if ids else None


def _pass(lhs=None, rhs=None):
    return ("pass", lhs, rhs, "")


def _fail(lhs, rhs, reason=""):
    return ("fail", lhs, rhs, reason)


def _skip(reason):
    return ("skip", None, None, reason)


def _eq(lhs, rhs, tag=""):
    return _pass(lhs, rhs) if lhs == rhs else _fail(lhs, rhs, tag)


def _all_eq(pairs):
    for tag, lhs, rhs in pairs:
        if lhs != rhs:
            return _fail(lhs, rhs, tag)
    first = pairs[0]
    return _pass(first[1], first[2])


def _le(lhs, rhs, tag=""):
    return _pass(lhs, rhs) if lhs <= rhs else _fail(lhs, rhs, tag)


# ---------------------------------------------------------------------------
# individual checks
# ---------------------------------------------------------------------------


def _check_voltage_circuit(ctx: SuiteContext):
    """Y-reduction legs agree with the resistance combination for j."""
    g = ctx.g
    v = g.vcount
    if v < 3:
        p, q = 0, min(1, v - 1)
        if p == q:
            return _skip("needs at least two vertices")
        lhs = resistance_via_reduction(g, p, q)
        return _eq(lhs, context(g).r(p, q), "two-terminal")
    triples = [(x, p, q) for x in range(v) for p in range(v) for q in range(v)
               if len({x, p, q}) == 3]
    ctx.rng.shuffle(triples)
    cx = context(g)
    for x, p, q in triples[:6]:
        lhs = voltage_via_reduction(g, x, p, q)
        rhs = cx.voltage(x, p, q)
        if lhs != rhs:
            return _fail(lhs, rhs, f"j_{x}({p},{q})")
        if lhs < 0:
            return _fail(lhs, 0, "voltage must be nonnegative")
        if cx.voltage(x, x, q) != 0:
            return _fail(cx.voltage(x, x, q), 0, "grounding")
        if cx.voltage(x, q, q) != cx.r(x, q):
            return _fail(cx.voltage(x, q, q), cx.r(x, q), "collapse to resistance")
    return _pass(rhs, rhs)


def _check_genus_identity(ctx: SuiteContext):
    left, right = genus_identity_check(ctx.g)
    return _all_eq([
        ("length part", left, Fraction(genus(ctx.g))),
        ("resistance part", right, Fraction(ctx.g.vcount - 1)),
    ])


def _check_measure_mass(ctx: SuiteContext):
    mu = canonical_measure(ctx.g)
    return _eq(mu.total_mass(ctx.g), Fraction(1))


def _check_lem2term(ctx: SuiteContext):
    g = ctx.g
    cx = context(g)
    v = g.vcount
    base_profiles = {p: cx.edge_profiles(p) for p in range(v)}
    lhs = sum(weighted_arm_diff_sq(pr) for pr in base_profiles[0])
    rhs = Fraction(2, v) * sum(weighted_res_sq(pr) for pr in base_profiles[0])
    for p in range(v):
        for pr in base_profiles[p]:
            a, b, _ = g.edges[pr.edge]
            if p not in (a, b):
                rhs += Fraction(1, v) * weighted_arm_diff_sq(pr)
    return _eq(lhs, rhs)


def _check_rem2term(ctx: SuiteContext):
    g = ctx.g
    cx = context(g)
    values = {
        p: sum(weighted_arm_diff_sq(pr) for pr in cx.edge_profiles(p))
        for p in range(g.vcount)
    }
    first = values[0]
    for p, val in values.items():
        if val != first:
            return _fail(val, first, f"base {p}")
    return _pass(first, first)


def _check_valence_independence(ctx: SuiteContext):
    g = ctx.g
    taus = {p: tau_edge_sum(g, p).tau for p in range(g.vcount)}
    first = taus[0]
    for p, val in taus.items():
        if val != first:
            return _fail(val, first, f"base {p}")
    edge = ctx.rng.randrange(g.ecount)
    midpoint = (edge, g.edges[edge].length / 2)
    enlarged, _ = insert_point(g, midpoint)
    return _eq(tau_of(enlarged), first, "valence-2 vertex insertion")


def _check_scale_covariance(ctx: SuiteContext):
    c = families.random_length(ctx.rng)
    return _eq(tau_of(scale(ctx.g, c)), c * tau_of(ctx.g))


def _check_power_integrals(ctx: SuiteContext):
    from .integration import EdgePolynomial, edge_tag_polynomials

    p, q = ctx.vertex_pair()
    if p == q:
        return _skip("needs two vertices")
    g = ctx.g
    r = context(g).r(p, q)
    totals = [Fraction(0)] * 4
    for edge in range(g.ecount):
        j_poly = edge_tag_polynomials(g, p, q, edge)[TAG_J_BASE_P]
        product = j_poly.derivative().power(2)
        length = g.edges[edge].length
        for n in range(4):
            totals[n] += product.integral(length)
            product = product * j_poly
    pairs = [(f"n={n}", totals[n], r ** (n + 1) / (n + 1)) for n in range(4)]
    return _all_eq(pairs)


def _check_orthogonality(ctx: SuiteContext):
    p, q = ctx.vertex_pair()
    if p == q:
        return _skip("needs two vertices")
    val = integrate_product(ctx.g, p, q, [(TAG_J_BASE_X, True, 1), (TAG_J_BASE_P, True, 1)])
    return _eq(val, Fraction(0))


def _check_tau_voltage_form(ctx: SuiteContext):
    p, q = ctx.vertex_pair()
    if p == q:
        return _skip("needs two vertices")
    energy = integrate_product(ctx.g, p, q, [(TAG_J_BASE_X, True, 2)])
    return _eq(4 * tau_of(ctx.g), energy + context(ctx.g).r(p, q))


def _check_apq_equivalences(ctx: SuiteContext):
    g = ctx.g
    p, q = ctx.vertex_pair()
    if p == q:
        return _skip("needs two vertices")
    direct = apq_direct(g, p, q)
    form_iv = -integrate_product(
        g, p, q,
        [(TAG_J_BASE_P, False, 1), (TAG_J_BASE_P, True, 1), (TAG_J_BASE_X, True, 1)],
    )
    form_v = integrate_product(
        g, p, q,
        [(TAG_J_BASE_Q, False, 1), (TAG_J_BASE_P, True, 1), (TAG_J_BASE_X, True, 1)],
    )
    r = context(g).r(p, q)
    form_vi = -r * r / 2 + integrate_product(
        g, p, q, [(TAG_R_FROM_P, False, 1), (TAG_J_BASE_P, True, 2)]
    )
    return _all_eq([
        ("product form", direct, form_iv),
        ("swapped base form", direct, form_v),
        ("resistance form", direct, form_vi),
    ])


def _check_global_bounds(ctx: SuiteContext):
    g = ctx.g
    tau = tau_of(g)
    ell = total_length(g)
    if not Fraction(1, 16 * g.ecount) * ell <= tau:
        return _fail(Fraction(1, 16 * g.ecount) * ell, tau, "lower bound")
    if not tau <= ell / 4:
        return _fail(tau, ell / 4, "upper bound")
    is_tree = genus(g) == 0 and not any(a == b for a, b, _ in g.edges)
    if (tau == ell / 4) != is_tree:
        return _fail(tau, ell / 4, "tree equality case")
    return _pass(tau, ell / 4)


def _equal_lengths(g: MetrizedGraph) -> bool:
    return len({e.length for e in g.edges}) == 1


def _check_equal_length_bound(ctx: SuiteContext):
    g = ctx.g
    if not _equal_lengths(g):
        return _skip("edge lengths not all equal")
    bound = Fraction(genus(g), g.ecount) ** 2 / 12
    return _le(bound, tau_of(normalize(g)))


def _check_equal_length_bound_sharper(ctx: SuiteContext):
    g = ctx.g
    if not _equal_lengths(g):
        return _skip("edge lengths not all equal")
    v, e = g.vcount, g.ecount
    bound = Fraction(genus(g), e) ** 2 / 12 + Fraction(1, 2 * v) * Fraction(v - 1, e) ** 2
    return _le(bound, tau_of(normalize(g)))


def _check_deleted_sum_bound(ctx: SuiteContext):
    if ctx.bridges:
        return _skip("a bridge makes the deleted-resistance sum infinite")
    gn = normalize(ctx.g)
    sum_r = sum((pr.res_deleted for pr in context(gn).edge_profiles(0)), Fraction(0))
    bound = 1 / (12 * (1 + sum_r) ** 2)
    result = _le(bound, tau_of(gn))
    if result[0] == "fail":
        return result
    counts: dict[frozenset, int] = {}
    for a, b, _ in gn.edges:
        if a != b:
            counts[frozenset((a, b))] = counts.get(frozenset((a, b)), 0) + 1
    if counts and all(n >= 2 for n in counts.values()):
        return _le(Fraction(1, 48), tau_of(gn), "doubled-edge case")
    return result


def _check_weighted_res_inequality(ctx: SuiteContext):
    gn = normalize(ctx.g)
    profiles = context(gn).edge_profiles(0)
    lhs = sum(weighted_res_sq(pr) for pr in profiles)
    rhs = sum(weighted_res(pr) for pr in profiles) ** 2
    return _le(rhs, lhs)


def _check_parallel_split(ctx: SuiteContext):
    n = ctx.rng.choice((2, 3, 4))
    result = da_n(ctx.g, n)
    return _eq(result.predicted_tau, tau_of(result.graph), f"n={n}")


def _check_split_and_subdivide(ctx: SuiteContext):
    g = ctx.g
    m, n = 2, 2
    if m * n * g.ecount > MAX_BUILT_EDGES or g.vcount + (m - 1) * g.ecount > MAX_BUILT_VERTICES:
        return _skip(f"built size {m * n * g.ecount} edges exceeds budget")
    built = da_n(subdivide_uniform(g, m), n).graph
    predicted = (
        tau_of(g) / n**2
        + total_length(g) / 12 * Fraction(n - 1, n) ** 2
        + Fraction(n - 1, 6 * m * n**2) * parallel_sum(g)
    )
    return _eq(predicted, tau_of(built))


def _check_subdivision_transfer(ctx: SuiteContext):
    g = ctx.g
    m = 3 if g.vcount + 2 * g.ecount <= MAX_BUILT_VERTICES else 2
    if g.vcount + (m - 1) * g.ecount > MAX_BUILT_VERTICES:
        return _skip("subdivision exceeds vertex budget")
    gm = subdivide_uniform(g, m)
    profiles = context(gm).edge_profiles(0)
    pairs = [
        ("square sum", parallel_sum(gm), parallel_sum(g) / m),
        ("cubic sum", cubic_sum(gm), cubic_sum(g) / (m * m)),
        ("product sum", sum(weighted_res(pr) for pr in profiles),
         Fraction(m - 1, m) * total_length(g)
         + sum(weighted_res(pr) for pr in context(g).edge_profiles(0)) / m),
    ]
    return _all_eq(pairs)


def _check_parallel_split_resistances(ctx: SuiteContext):
    g = ctx.g
    n = ctx.rng.choice((2, 3))
    built = da_n(g, n).graph
    built_profiles = context(built).edge_profiles(0)
    for i, profile in enumerate(context(g).edge_profiles(0)):
        length = profile.length
        if profile.loop:
            expected = Fraction(0)
        elif profile.bridge:
            expected = length / (n * (n - 1))
        else:
            res = profile.res_deleted
            expected = Fraction(1, n) * length * res / (n * length + (n - 1) * res)
        for k in range(n):
            actual = built_profiles[i * n + k].res_deleted
            if actual != expected:
                return _fail(actual, expected, f"edge {i} copy {k}")
    lhs = parallel_sum(built)
    rhs = Fraction(n - 1, n) * total_length(g) + parallel_sum(g) / n
    return _eq(lhs, rhs, "square-sum transfer")


def _check_split_implication(ctx: SuiteContext):
    gn = normalize(ctx.g)
    tau = tau_of(gn)
    for n, threshold in ((2, Fraction(1, 27)), (3, Fraction(49, 972))):
        if threshold != Fraction(1, 108) * Fraction(3 * n - 2, n) ** 2:
            return _fail(threshold, Fraction(1, 108) * Fraction(3 * n - 2, n) ** 2, "constant")
        split_tau = da_n(gn, n).predicted_tau
        if split_tau >= threshold and not tau >= Fraction(1, 108):
            return _fail(tau, Fraction(1, 108), f"implication broken at n={n}")
    return _pass(tau, Fraction(1, 108))


def _small_marked_graphs(rng: random.Random) -> list[tuple[MetrizedGraph, int, int]]:
    return [
        (families.equal_banana(2), 0, 1),
        (families.equal_banana(3), 0, 1),
        (families.segment(1), 0, 1),
        (families.path(Fraction(1, 2), Fraction(1, 2)), 0, 2),
    ]


def _check_uniform_immersion(ctx: SuiteContext):
    gn = normalize(ctx.g)
    beta, p, q = ctx.rng.choice(_small_marked_graphs(ctx.rng)[:3])
    if beta.ecount * gn.ecount > MAX_BUILT_EDGES:
        return _skip("immersion exceeds edge budget")
    r_beta = context(beta).r(p, q)
    predicted = (
        tau_of(beta)
        - r_beta / 4
        + r_beta * tau_of(gn)
        + apq_identity(beta, p, q) / r_beta * parallel_sum(gn)
    )
    built = immerse_uniform(gn, beta, p, q)
    return _all_eq([
        ("closed form", predicted, tau_of(built.graph)),
        ("op prediction", built.predicted_tau, tau_of(built.graph)),
    ])


def _check_mixed_immersion(ctx: SuiteContext):
    gn = normalize(ctx.g)
    menu = _small_marked_graphs(ctx.rng)
    betas = [menu[i % len(menu)] for i in range(gn.ecount)]
    built_edges = sum(beta.ecount for beta, _, _ in betas)
    built_vertices = gn.vcount + sum(beta.vcount - 2 for beta, _, _ in betas)
    if built_edges > MAX_BUILT_EDGES or built_vertices > MAX_BUILT_VERTICES:
        return _skip(f"immersion builds {built_edges} edges, over budget")
    result = immerse(gn, betas)
    size = Fraction(0)
    rhs = tau_of(gn) - Fraction(1, 4)
    for (a, b, length), (beta, p, q), profile in zip(
        gn.edges, betas, context(gn).edge_profiles(0)
    ):
        r_beta = context(beta).r(p, q)
        size += length / r_beta
        rhs += length * tau_of(beta) / r_beta
        if not profile.bridge:
            rhs += length**2 * apq_identity(beta, p, q) / (
                (length + profile.res_deleted) * r_beta**2
            )
    return _eq(tau_of(result.graph) * size, rhs)


def _check_common_resistance_immersion(ctx: SuiteContext):
    gn = normalize(ctx.g)
    menu = [
        (families.equal_banana(2), 0, 1),
        (families.circle(*([Fraction(1, 4)] * 4)), 0, 2),
    ]
    r = Fraction(1, 4)
    betas = [menu[i % 2] for i in range(gn.ecount)]
    built_edges = sum(beta.ecount for beta, _, _ in betas)
    built_vertices = gn.vcount + sum(beta.vcount - 2 for beta, _, _ in betas)
    if built_edges > MAX_BUILT_EDGES or built_vertices > MAX_BUILT_VERTICES:
        return _skip(f"immersion builds {built_edges} edges, over budget")
    result = immerse(gn, betas)
    predicted = r * tau_of(gn) - r / 4
    for (a, b, length), (beta, p, q), profile in zip(
        gn.edges, betas, context(gn).edge_profiles(0)
    ):
        predicted += length * tau_of(beta)
        if not profile.bridge:
            predicted += (
                length**2 / (length + profile.res_deleted) * apq_identity(beta, p, q) / r
            )
    return _eq(predicted, tau_of(result.graph))


def _check_single_graph_immersion(ctx: SuiteContext):
    gn = normalize(ctx.g)
    beta = families.circle(Fraction(1, 2), Fraction(1, 3), Fraction(1, 6))
    pairs = [(0, 1), (1, 2), (0, 2)]
    betas = [(beta, *pairs[i % 3]) for i in range(gn.ecount)]
    built_edges = 3 * gn.ecount
    built_vertices = gn.vcount + gn.ecount
    if built_edges > MAX_BUILT_EDGES or built_vertices > MAX_BUILT_VERTICES:
        return _skip(f"immersion builds {built_edges} edges, over budget")
    result = immerse(gn, betas)
    size = Fraction(0)
    bracket = tau_of(gn) - Fraction(1, 4)
    cx_beta = context(beta)
    for (a, b, length), (beta_g, p, q), profile in zip(
        gn.edges, betas, context(gn).edge_profiles(0)
    ):
        r_i = cx_beta.r(p, q)
        size += length / r_i
        if not profile.bridge:
            bracket += length**2 * apq_identity(beta, p, q) / (
                (length + profile.res_deleted) * r_i**2
            )
    predicted = tau_of(beta) + bracket / size
    return _eq(predicted, tau_of(result.graph))


def _check_self_immersion_decrease(ctx: SuiteContext):
    gn = normalize(ctx.g)
    e, v = gn.ecount, gn.vcount
    if e * e > MAX_BUILT_EDGES or v + e * (v - 2) > MAX_BUILT_VERTICES:
        return _skip(f"self-immersion builds {e * e} edges, over budget")
    p, q = ctx.vertex_pair()
    if p == q:
        return _skip("needs two vertices")
    r = context(gn).r(p, q)
    eps = apq_identity(gn, p, q) / r * parallel_sum(gn)
    built = immerse_uniform(gn, gn, p, q)
    predicted = tau_of(gn) - r * (Fraction(1, 4) - tau_of(gn)) + eps
    result = _eq(predicted, tau_of(built.graph), "exact value")
    if result[0] != "pass":
        return result
    return _le(tau_of(built.graph), predicted, "decrease bound")


def _check_two_point_union(ctx: SuiteContext):
    other = families.random_connected(ctx.rng, 4, 6)
    p1, q1 = ctx.vertex_pair()
    if p1 == q1:
        return _skip("needs two vertices")
    q2 = 1 if other.vcount > 1 else 0
    result = union_two_points(ctx.g, other, (p1, q1), (0, q2))
    return _eq(result.predicted_tau, tau_of(result.graph))


def _check_self_union(ctx: SuiteContext):
    p, q = ctx.vertex_pair()
    if p == q:
        return _skip("needs two vertices")
    g = ctx.g
    result = union_two_points(g, g, (p, q), (p, q))
    r = context(g).r(p, q)
    predicted = 2 * tau_of(g) - r / 3 + apq_identity(g, p, q) / r
    return _all_eq([
        ("closed form", predicted, tau_of(result.graph)),
        ("op prediction", result.predicted_tau, tau_of(result.graph)),
    ])


def _check_edge_deletion(ctx: SuiteContext):
    edge = ctx.proper_edge()
    if edge is None:
        return _skip("every edge is a bridge or a loop")
    result = delete_edge(ctx.g, edge)
    return _eq(result.predicted_tau, tau_of(result.graph), f"edge {edge}")


def _check_edge_deletion_energy(ctx: SuiteContext):
    g = ctx.g
    edge = ctx.proper_edge()
    if edge is None:
        return _skip("every edge is a bridge or a loop")
    deleted, (p, q) = delete_edge_graph(g, edge)
    profile = context(g).edge_profiles(0)[edge]
    energy = integrate_product(deleted, p, q, [(TAG_J_BASE_X, True, 2)])
    denom = profile.length + profile.res_deleted
    predicted = energy / 4 + denom / 12 + apq_identity(deleted, p, q) / denom
    return _eq(predicted, tau_of(g))


def _check_length_change(ctx: SuiteContext):
    g = ctx.g
    edge = ctx.proper_edge()
    if edge is None:
        return _skip("every edge is a bridge or a loop")
    a, b, length = g.edges[edge]
    x = families.random_length(ctx.rng) - length / 2  # may shrink, stays positive
    if length + x <= 0:
        x = length / 2
    modified = MetrizedGraph(
        g.vcount,
        g.edges[:edge] + (g.edges[edge]._replace(length=length + x),) + g.edges[edge + 1 :],
    )
    deleted, (p, q) = delete_edge_graph(g, edge)
    a_del = apq_identity(deleted, p, q) if p != q else Fraction(0)
    profile = context(g).edge_profiles(0)[edge]
    denom = profile.length + profile.res_deleted
    predicted = tau_of(g) + x / 12 - x * a_del / (denom * (denom + x))
    return _eq(predicted, tau_of(modified), f"x={x}")


def _check_successive_length_changes(ctx: SuiteContext):
    g = ctx.g
    if ctx.bridges:
        return _skip("graph has a bridge")
    current = g
    total = tau_of(g)
    for i in range(g.ecount):
        a, b, length = current.edges[i]
        x = families.random_length(ctx.rng, 8, 8) - length / 2
        if length + x <= 0:
            x = length / 3
        modified = MetrizedGraph(
            current.vcount,
            current.edges[:i] + (current.edges[i]._replace(length=length + x),)
            + current.edges[i + 1 :],
        )
        if a != b:
            deleted, (p, q) = delete_edge_graph(modified, i)
            a_del = apq_identity(deleted, p, q)
            res = context(modified).edge_profiles(0)[i].res_deleted
            total += x / 12 - x * a_del / ((length + res) * (length + res + x))
        else:
            total += x / 12
        current = modified
    return _eq(total, tau_of(current))


def _check_bridgeless_identity(ctx: SuiteContext):
    if ctx.bridges:
        return _skip("graph has a bridge")
    lhs, rhs = tau_bridgeless_identity(ctx.g)
    return _eq(lhs, rhs)


def _check_bridgeless_upper_bound(ctx: SuiteContext):
    if ctx.bridges:
        return _skip("graph has a bridge")
    return _le(tau_of(ctx.g), total_length(ctx.g) / 12)


def _contract_setup(ctx: SuiteContext):
    edge = ctx.proper_edge()
    if edge is None:
        return None
    g = ctx.g
    deleted, (p, q) = delete_edge_graph(g, edge)
    res = context(g).edge_profiles(0)[edge].res_deleted
    a_del = apq_identity(deleted, p, q)
    return edge, deleted, p, q, res, a_del


def _check_contraction_values(ctx: SuiteContext):
    setup = _contract_setup(ctx)
    if setup is None:
        return _skip("every edge is a bridge or a loop")
    edge, deleted, p, q, res, a_del = setup
    g = ctx.g
    length = g.edges[edge].length
    shrunk = contract_edge(g, edge).graph
    looped = identify_points_graph(g, p, q)
    return _all_eq([
        ("contracted", tau_of(shrunk), tau_of(deleted) - res / 6 + a_del / res),
        ("looped", tau_of(looped), tau_of(deleted) + length / 12 - res / 6 + a_del / res),
    ])


def _check_contraction_deltas(ctx: SuiteContext):
    setup = _contract_setup(ctx)
    if setup is None:
        return _skip("every edge is a bridge or a loop")
    edge, deleted, p, q, res, a_del = setup
    g = ctx.g
    length = g.edges[edge].length
    drop = length * a_del / (res * (length + res))
    shrunk = contract_edge(g, edge).graph
    looped = identify_points_graph(g, p, q)
    return _all_eq([
        ("contracted", tau_of(g), tau_of(shrunk) + length / 12 - drop),
        ("looped", tau_of(g), tau_of(looped) - drop),
    ])


def _check_edge_addition(ctx: SuiteContext):
    p, q = ctx.vertex_pair()
    result = add_edge(ctx.g, p, q, families.random_length(ctx.rng))
    return _eq(result.predicted_tau, tau_of(result.graph))


def _check_point_identification(ctx: SuiteContext):
    p, q = ctx.vertex_pair()
    if p == q:
        return _skip("needs two vertices")
    result = identify_points(ctx.g, p, q)
    return _eq(result.predicted_tau, tau_of(result.graph))


def _check_union_apq(ctx: SuiteContext):
    g = ctx.g
    other = families.random_connected(ctx.rng, 4, 6)
    p1, q1 = ctx.vertex_pair()
    if p1 == q1:
        return _skip("needs two vertices")
    q2 = 1 if other.vcount > 1 else 0
    if q2 == 0:
        return _skip("companion graph too small")
    union = union_two_points(g, other, (p1, q1), (0, q2)).graph
    keep_p, keep_q = min(p1, q1), max(p1, q1)
    r1 = context(g).r(p1, q1)
    r2 = context(other).r(0, q2)
    a1 = apq_identity(g, p1, q1)
    a2 = apq_identity(other, 0, q2)
    predicted = (r2**2 * a1 + r1**2 * a2) / (r1 + r2) ** 2 + Fraction(1, 6) * (
        r1 * r2 / (r1 + r2)
    ) ** 2
    return _eq(apq_identity(union, keep_p, keep_q), predicted)


def _check_self_union_apq(ctx: SuiteContext):
    g = ctx.g
    p, q = ctx.vertex_pair()
    if p == q:
        return _skip("needs two vertices")
    union = union_two_points(g, g, (p, q), (p, q)).graph
    lhs = 2 * apq_identity(union, min(p, q), max(p, q))
    rhs = context(g).r(p, q) ** 2 / 12 + apq_identity(g, p, q)
    return _eq(lhs, rhs)


def _check_tower(ctx: SuiteContext):
    gn = normalize(ctx.g)
    p, q = ctx.vertex_pair()
    if p == q:
        return _skip("needs two vertices")
    result = c_tower(gn, p, q, 2)
    r = context(gn).r(p, q)
    explicit = (
        tau_of(gn)
        + Fraction(3, 4) * apq_identity(gn, p, q) / r
        - Fraction(3, 16) * r
    )
    return _all_eq([
        ("op prediction", result.predicted_tau, tau_of(result.graph)),
        ("n=2 closed form", explicit, tau_of(result.graph)),
    ])


def _check_circle_apq(ctx: SuiteContext):
    a = families.random_length(ctx.rng)
    b = families.random_length(ctx.rng)
    circle = families.circle(a, b)
    return _eq(apq_checked(circle, 0, 1), a**2 * b**2 / (6 * (a + b) ** 2))


def _check_apq_edge_split(ctx: SuiteContext):
    g = ctx.g
    edge = ctx.proper_edge()
    if edge is None:
        return _skip("every edge is a bridge or a loop")
    a, b, length = g.edges[edge]
    deleted, (p, q) = delete_edge_graph(g, edge)
    profile = context(g).edge_profiles(0)[edge]
    res = profile.res_deleted
    predicted = length**2 * apq_identity(deleted, p, q) / (length + res) ** 2 + context(
        g
    ).r(p, q) ** 2 / 6
    return _eq(apq_identity(g, p, q), predicted)


def _check_tree_apq(ctx: SuiteContext):
    tree = families.random_tree(ctx.rng, 7)
    p, q = 0, tree.vcount - 1
    return _eq(apq_checked(tree, p, q), Fraction(0))


def _check_wedge_apq(ctx: SuiteContext):
    g1 = ctx.g
    g2 = families.random_connected(ctx.rng, 4, 6)
    y1 = ctx.rng.randrange(g1.vcount)
    y2 = ctx.rng.randrange(g2.vcount)
    p = ctx.rng.randrange(g1.vcount)
    q2 = ctx.rng.randrange(g2.vcount)
    wedge = union_one_point(g1, y1, g2, y2).graph
    # image ids: g1 keeps ids; g2's vertex v maps to y1 if v == y2 else offset rank
    def image(v2: int) -> int:
        if v2 == y2:
            return y1
        rank = sum(1 for w in range(v2) if w != y2)
        return g1.vcount + rank
    q = image(q2)
    if p == q:
        return _skip("sampled points coincide at the wedge vertex")
    lhs = apq_identity(wedge, p, q) if p != q else Fraction(0)
    a1 = apq_identity(g1, p, y1) if p != y1 else Fraction(0)
    a2 = apq_identity(g2, y2, q2) if y2 != q2 else Fraction(0)
    return _eq(lhs, a1 + a2)


def _check_banana_apq(ctx: SuiteContext):
    m = ctx.rng.randint(1, 6)
    lengths = [families.random_length(ctx.rng) for _ in range(m)]
    graph = families.banana(*lengths)
    r = context(graph).r(0, 1)
    return _eq(apq_checked(graph, 0, 1), (m - 1) * r * r / 6)


def _check_banana_tau(ctx: SuiteContext):
    m = ctx.rng.randint(1, 6)
    lengths = [families.random_length(ctx.rng) for _ in range(m)]
    graph = families.banana(*lengths)
    r = context(graph).r(0, 1)
    ell = total_length(graph)
    expected = ell / 12 - Fraction(m - 2, 6) * r
    result = _eq(tau_of(graph), expected)
    if result[0] != "pass":
        return result
    floor = ell * (Fraction(1, 12) - Fraction(m - 2, 6 * m * m))
    if not floor <= tau_of(graph):
        return _fail(floor, tau_of(graph), "equal-length minimum")
    if not ell / 16 <= floor + 0:
        pass
    equal = families.equal_banana(m, ell)
    if tau_of(equal) != floor:
        return _fail(tau_of(equal), floor, "equal-length value")
    if not total_length(equal) / 16 <= tau_of(equal):
        return _fail(total_length(equal) / 16, tau_of(equal), "sixteenth bound")
    return result


def _check_bridge_contraction(ctx: SuiteContext):
    g = ctx.g
    if not ctx.bridges:
        return _pass(tau_of(g), tau_of(g))
    current = g
    while True:
        bridge_ids = bridges(current)
        if not bridge_ids:
            break
        current = contract_edge(current, bridge_ids[0]).graph
    drop = (total_length(g) - total_length(current)) / 4
    return _eq(tau_of(g), tau_of(current) + drop)


CHECKS = [
    ("eq1.1-voltage", "Y legs from rewrites equal resistance combinations of j",
     "r(p,x) = j_p(x,q) + j_x(p,q)", _check_voltage_circuit),
    ("genus-identity", "deleted-resistance ratios sum to genus and v-1",
     "sum L/(L+R) = g; sum R/(L+R) = v-1", _check_genus_identity),
    ("canonical-measure-mass", "the canonical measure has total mass one",
     "sum (1 - valence/2) + sum length/(L+R) = 1", _check_measure_mass),
    ("lem2term", "arm-difference sum decomposes over all base vertices",
     "sum L(Ra-Rb)^2/(L+R)^2 = (2/v) sum LR^2/(L+R)^2 + (1/v) sum_p sum_{e not at p}",
     _check_lem2term),
    ("rem2term", "arm-difference sum is base independent",
     "sum L(Ra-Rb)^2/(L+R)^2 same for all bases", _check_rem2term),
    ("valence-independence", "tau ignores base vertex and valence-2 insertions",
     "tau(g, p) = tau(g, q); tau unchanged by midpoint vertex", _check_valence_independence),
    ("scale-covariance", "tau scales linearly with all lengths",
     "tau(c g) = c tau(g)", _check_scale_covariance),
    ("thmjpq2njpq-n0..3", "energy-power integrals close in the pair resistance",
     "int (j_p')^2 j_p^n = r^{n+1}/(n+1), n = 0..3", _check_power_integrals),
    ("lemorthogonality", "the two voltage gradients are orthogonal",
     "int j_x' j_p' = 0", _check_orthogonality),
    ("thmbasic", "tau from the moving-base voltage energy",
     "4 tau = int (j_x')^2 + r(p,q)", _check_tau_voltage_form),
    ("thmremain-equivalences", "four integral forms of the voltage integral agree",
     "A = -int j_p j_p' j_x' = int j_q j_p' j_x' = int r (j_p')^2 - r^2/2",
     _check_apq_equivalences),
    ("FMM1-bounds", "global tau bounds with the tree equality case",
     "l/(16e) <= tau <= l/4, upper equality iff tree", _check_global_bounds),
    ("thmeqlength", "equal-length lower bound",
     "tau >= (1/12)(g/e)^2 at unit length", _check_equal_length_bound),
    ("thmeqlength2", "sharper equal-length lower bound",
     "tau >= (1/12)(g/e)^2 + (1/2v)((v-1)/e)^2", _check_equal_length_bound_sharper),
    ("thmcorineqsumR4", "deleted-resistance-sum lower bound",
     "tau >= 1/(12(1+sum R)^2); >= 1/48 with doubled edges", _check_deleted_sum_bound),
    ("thm2term", "weighted deleted-resistance square inequality",
     "sum LR^2/(L+R)^2 >= (sum LR/(L+R))^2 at unit length", _check_weighted_res_inequality),
    ("thmdouble", "parallel-split closed form",
     "tau(split n) = tau/n^2 + (l/12)((n-1)/n)^2 + ((n-1)/(6n^2)) sum L^2/(L+R)",
     _check_parallel_split),
    ("thmdoubledivision", "parallel split after subdivision",
     "tau(split n of m-subdivision) closed form", _check_split_and_subdivide),
    ("lemdivision1", "subdivision transfer identities",
     "square, cubic and product sums transfer under m-subdivision", _check_subdivision_transfer),
    ("lemdivisione", "parallel-split deleted resistances",
     "R(split) = L R/(n(nL+(n-1)R)) and square-sum transfer", _check_parallel_split_resistances),
    ("thmdoubleimp-implication", "split bound pulls back to the original graph",
     "tau(split n) >= (1/108)((3n-2)/n)^2 implies tau >= 1/108", _check_split_implication),
    ("thmmagnificent", "uniform immersion closed form",
     "tau((g*b)^N) = tau(b) - r/4 + r tau(g) + (A/r) sum L^2/(L+R)", _check_uniform_immersion),
    ("thmmaggen", "per-edge immersion closed form",
     "tau((g*prod b_i)^N) sum L_i/r_i = tau(g) - 1/4 + sum [...]", _check_mixed_immersion),
    ("cormaggen1", "immersion with a common marked resistance",
     "all r_i = r simplifies the immersion formula", _check_common_resistance_immersion),
    ("cormaggen2", "one replacement graph, varying marked pairs",
     "single-graph immersion formula", _check_single_graph_immersion),
    ("thm-smaller-tau-decrease", "self-immersion lowers tau by r(1/4 - tau) up to eps",
     "tau((g^m * g_pq)^N) = tau - r(1/4-tau) + (A/(m r)) sum L^2/(L+R)",
     _check_self_immersion_decrease),
    ("thmtwopunion", "two-point union closed form",
     "tau(union) = tau1 + tau2 - (r1+r2)/6 + (A1+A2)/(r1+r2)", _check_two_point_union),
    ("cor1twopunion", "two-point self-union closed form",
     "tau(g u g) = 2 tau - r/3 + A/r", _check_self_union),
    ("cor2twopunion", "edge deletion closed form",
     "tau = tau(g-e) + L/12 - R/6 + A/(L+R)", _check_edge_deletion),
    ("cor2twopunion2", "edge deletion energy form",
     "tau = (1/4) int_(g-e) (j_x')^2 + (L+R)/12 + A/(L+R)", _check_edge_deletion_energy),
    ("lemedgeext", "single length change",
     "tau' = tau + x/12 - x A/((L+R)(L+R+x))", _check_length_change),
    ("lemsuccessedgeext", "successive length changes telescope",
     "tau(g_e) = tau + sum x_i/12 - sum x_i A_i/((L_i+R_i')(L_i+R_i'+x_i))",
     _check_successive_length_changes),
    ("thmbasic2", "bridgeless tau identity",
     "tau = l/12 - sum L A/(L+R)^2", _check_bridgeless_identity),
    ("corbasic2", "bridgeless upper bound",
     "tau <= l/12", _check_bridgeless_upper_bound),
    ("lemcontract1", "contraction values from the deleted graph",
     "tau(contract) = tau(g-e) - R/6 + A/R", _check_contraction_values),
    ("lemcontract2", "contraction deltas from the original graph",
     "tau = tau(contract) + L/12 - L A/(R(L+R))", _check_contraction_deltas),
    ("coradding1", "edge addition closed form",
     "tau(g+(p,q,L)) = tau + L/12 - r/6 + A/(L+r)", _check_edge_addition),
    ("coradding2", "point identification closed form",
     "tau(g_pq) = tau - r/6 + A/r", _check_point_identification),
    ("thm-twopunion-Apq", "voltage integral of a two-point union",
     "A(union) = (r2^2 A1 + r1^2 A2)/(r1+r2)^2 + (1/6)(r1 r2/(r1+r2))^2", _check_union_apq),
    ("corlem-twopunion-Apq", "voltage integral of a self-union",
     "2 A(g u g) = r^2/12 + A", _check_self_union_apq),
    ("thm-twopunion2-tower", "tower of two-point self-unions",
     "tau(tower n) = tau + (1-2^-n) A/r + (-1/6 - 1/(6 2^n) + 1/(3 4^n)) r", _check_tower),
    ("corpropAcircle", "two-arc circle voltage integral",
     "A = a^2 b^2/(6(a+b)^2)", _check_circle_apq),
    ("lemApq", "voltage integral across an attached edge",
     "A = L^2 A(g-e)/(L+R)^2 + r^2/6", _check_apq_edge_split),
    ("propAtree", "trees have zero voltage integral",
     "A = 0 on a tree", _check_tree_apq),
    ("propAadditive", "voltage integral is additive across a wedge",
     "A_{p,q} = A_{p,y} + A_{y,q}", _check_wedge_apq),
    ("propAbanana", "parallel-edge voltage integral",
     "A = (m-1) r^2/6", _check_banana_apq),
    ("proplembanana", "parallel-edge tau with its minimum",
     "tau = l/12 - ((m-2)/6) r >= l/16 at m=4", _check_banana_tau),
    ("coradd-bridge-contraction", "bridges contribute length/4",
     "tau = tau(bridges contracted) + (l - l')/4", _check_bridge_contraction),
]


def identity_catalog() -> list[tuple[str, str, str]]:
    """Machine-readable list of all cataloged checks: (id, description, anchor)."""
    return [(cid, desc, anchor) for cid, desc, anchor, _ in CHECKS]


@dataclass(frozen=True)
class GraphGenerator:
    """Deterministic family generator: same seed, same sequence."""

    seed: int
    family: str = "random_connected"
    max_vertices: int = 8
    max_edges: int = 16

    def graphs(self, count: int):
        rng = random.Random(f"mgt-corpus:{self.seed}:{self.family}")
        for index in range(count):
            yield self._one(rng, index)

    def _one(self, rng: random.Random, index: int) -> tuple[str, MetrizedGraph]:
        fam = self.family
        if fam == "random_connected":
            g = families.random_connected(rng, self.max_vertices, self.max_edges)
        elif fam == "complete":
            g = families.complete(2 + index % 7)
        elif fam == "banana":
            g = families.equal_banana(1 + index % 10)
        elif fam == "circle_subdivided":
            arcs = [families.random_length(rng) for _ in range(1 + index % 6)]
            g = families.circle(*arcs)
        elif fam == "diamond_necklace":
            g = families.necklace(families.random_length(rng), families.random_length(rng),
                                  2 + index % 2)
        elif fam == "tree":
            g = families.random_tree(rng, self.max_vertices)
        elif fam == "theta":
            g = families.theta(*(families.random_length(rng) for _ in range(3)))
        elif fam == "cube-like":
            g = families.cube(families.random_length(rng))
        else:
            raise MgtError(f"unknown family {fam!r}")
        return f"{fam}#{index}(v={g.vcount},e={g.ecount})", g


def run_suite(gen: GraphGenerator, count: int, identities: list[str] | None = None) -> list[CheckResult]:
    """Run the catalog over generated graphs; failures are results, not errors."""
    wanted = set(identities) if identities else None
    results: list[CheckResult] = []
    for index, (descriptor, g) in enumerate(gen.graphs(count)):
        results.extend(run_graph_checks(descriptor, g,
                                        random.Random(f"mgt-checks:{gen.seed}:{index}"),
                                        wanted))
    return results


def run_graph_checks(descriptor: str, g: MetrizedGraph, rng: random.Random,
                     wanted: set[str] | None = None) -> list[CheckResult]:
    results = []
    for cid, _desc, _anchor, fn in CHECKS:
        if wanted is not None and cid not in wanted:
            continue
        ctx = SuiteContext(descriptor, g, rng)
        try:
            status, lhs, rhs, reason = fn(ctx)
        except MgtError as exc:
            status, lhs, rhs, reason = "fail", None, None, f"error: {exc}"
        results.append(CheckResult(cid, descriptor, lhs, rhs, status, reason))
    return results


def necklace_witness() -> tuple[CheckResult, CheckResult]:
    """The normalized necklace instance that separates tau from the cubic sum.

    Uses the closed-form tau (verified against the direct engine on small
    instances) and symmetry classes for the per-edge deleted resistances:
    600 edges fall into three classes whose deleted graphs reduce to five-node
    networks.
    """
    t = 100
    a = Fraction(1, 101)
    b = (1 - a * t) / (5 * t)
    g = families.necklace(a, b, t)
    assert total_length(g) == 1
    tau = families.necklace_tau(a, b, t)
    term = necklace_cubic_sum(a, b, t) / 12
    r1 = CheckResult(
        "necklace-tau-above", f"necklace(a={a},b={b},t={t})",
        tau, Fraction(10, 121),
        "pass" if tau > Fraction(10, 121) else "fail",
    )
    r2 = CheckResult(
        "necklace-cubic-below", f"necklace(a={a},b={b},t={t})",
        term, Fraction(1, 5000),
        "pass" if term < Fraction(1, 5000) else "fail",
    )
    return r1, r2


def necklace_cubic_sum(a, b, t: int) -> Fraction:
    """sum L^3/(L+R)^2 on the necklace via its three edge symmetry classes."""
    a = Fraction(a)
    b = Fraction(b)
    res = necklace_edge_resistances(a, b, t)
    return (
        t * a**3 / (a + res["ring"]) ** 2
        + 4 * t * b**3 / (b + res["side"]) ** 2
        + t * b**3 / (b + res["diagonal"]) ** 2
    )


def necklace_edge_resistances(a, b, t: int) -> dict[str, Fraction]:
    """Deleted-edge resistances per symmetry class of the necklace.

    Each diamond sees the rest of the necklace as a single resistor of value
    t a + (t-1) b between its two ring attachment points, so every class
    reduces to a five-node network.
    """
    a = Fraction(a)
    b = Fraction(b)
    outside = t * a + (t - 1) * b
    # vertices: p=0, corner1=1, q=2, corner2=3; ring closure p-q through outside
    diamond = [(0, 1, b), (1, 2, b), (2, 3, b), (3, 0, b), (1, 3, b)]
    ring = (t - 1) * a + t * b
    side_net = families.build_graph(4, diamond[1:] + [(0, 2, outside)])
    side = context(side_net).r(0, 1)
    diag_net = families.build_graph(4, diamond[:4] + [(0, 2, outside)])
    diagonal = context(diag_net).r(1, 3)
    return {"ring": ring, "side": side, "diagonal": diagonal}
