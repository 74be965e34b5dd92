import random
from fractions import Fraction as F

import pytest

from mgt import families
from mgt.circuit import context
from mgt.errors import HasBridge, SamePoint
from mgt.graph import build_graph, insert_point, scale, subdivide_uniform, total_length
from mgt.rational import INF
from mgt.tau import (
    apq_checked,
    apq_identity,
    canonical_measure,
    genus_identity_check,
    lower_bound_suite,
    tau_bridgeless_identity,
    tau_edge_sum,
    tau_gradient,
    tau_of,
)


def test_tau_closed_forms():
    # circles of any subdivision and length mix
    assert tau_of(families.circle(F(7, 3))) == F(7, 36)
    assert tau_of(families.circle(F(1, 2), F(1, 3), F(1, 6))) == F(1, 12)
    # trees
    assert tau_of(families.path(1, 2, 3)) == F(6, 4)
    # complete graphs at unit total length
    for v in range(2, 9):
        expected = F(1, 12) * (1 - F(2, v)) ** 2 + F(2, v**3)
        assert tau_of(families.complete(v)) == expected
    assert tau_of(families.complete(5)) == F(23, 500)
    # equal banana closed form with minimum at m = 4
    values = {}
    for m in range(1, 11):
        values[m] = tau_of(families.equal_banana(m))
        assert values[m] == F(m * m - 2 * m + 4, 12 * m * m)
    assert min(values.values()) == values[4] == F(1, 16)
    # diamond graph: one fifteenth of its total length
    assert tau_of(families.diamond(1)) == F(5, 15)
    # diamond necklace closed form on small instances, via the direct engine
    for t in (2, 3):
        for a, b in ((F(1, 20), F(1, 30)), (F(1, 8), F(1, 8))):
            assert tau_of(families.necklace(a, b, t)) == families.necklace_tau(a, b, t)


def test_necklace_normalized_rational_forms():
    # normalized necklace tau and cubic sum as rational functions of (a, t)
    from mgt.tau import cubic_sum

    for t in (2, 3):
        for a in (F(1, 10), F(1, 25)):
            b = (1 - a * t) / (5 * t)
            g = families.necklace(a, b, t)
            tau_form = F(
                24 * t**3 * a**2 + 22 * t**2 * a + 4 * t + 3 - 6 * t * a + 3 * t**2 * a**2,
                120 * t * (4 * t * a + 1),
            )
            assert tau_of(g) == tau_form
            cubic_num = (
                4 - 12 * (a - 1) * t + (12 * a**2 + 24 * a + 13) * t**2
                + a * (1996 * a**2 - 84 * a + 91) * t**3
                + 8 * a**2 * (6 * a + 13) * t**4 - 208 * a**3 * t**5
            )
            assert cubic_sum(g) / 12 == cubic_num / (960 * t**2 * (4 * a * t + 1) ** 2)


def test_circle_subdivide_then_split_closed_form():
    # m-subdivided circle, each edge split into n parallel halves
    from mgt.ops import da_n

    for m in (1, 2, 3):
        for n in (2, 3):
            circ = subdivide_uniform(families.circle(F(1)), m)
            built = da_n(circ, n).graph
            expected = F((n - 1) ** 2 + 1, 12 * n**2) + F(n - 1, 6 * m * n**2)
            assert tau_of(built) == expected
    # the doubled case collapses to l/24 + l/(24 m)
    for m in (1, 2, 5):
        built = da_n(subdivide_uniform(families.circle(F(1)), m), 2).graph
        assert tau_of(built) == F(1, 24) + F(1, 24 * m)


def test_tau_report_fields():
    k5 = families.complete(5)
    report = tau_edge_sum(k5, 2)
    assert report.base_vertex == 2
    assert report.tau == F(23, 500)
    assert report.total_length == 1
    assert report.genus == 6
    assert sum(c for _, c, _ in report.per_edge) == report.tau


def test_tau_bridge_and_loop_contributions():
    seg = families.segment(F(2, 3))
    report = tau_edge_sum(seg)
    assert report.per_edge[0][1] == F(1, 6)  # length/4
    assert report.per_edge[0][2] is INF
    loop = families.circle(F(3, 5))
    assert tau_edge_sum(loop).per_edge[0][1] == F(1, 20)  # length/12


def test_canonical_measure_examples():
    seg = families.segment(1)
    mu = canonical_measure(seg)
    assert dict(mu.vertex_masses) == {0: F(1, 2), 1: F(1, 2)}
    assert dict(mu.edge_densities) == {0: F(0)}
    loop = families.circle(F(2))
    mu = canonical_measure(loop)
    assert dict(mu.vertex_masses) == {0: F(0)}
    assert dict(mu.edge_densities) == {0: F(1, 2)}
    k4 = families.complete(4, 1)
    mu = canonical_measure(k4)
    assert all(m == F(-1, 2) for _, m in mu.vertex_masses)
    assert all(d == 3 for _, d in mu.edge_densities)
    assert mu.total_mass(k4) == 1


def test_canonical_measure_mass_is_one():
    rng = random.Random(47)
    for _ in range(15):
        g = families.random_connected(rng, 7, 12)
        assert canonical_measure(g).total_mass(g) == 1


def test_genus_identity():
    assert genus_identity_check(families.circle(F(5, 4))) == (1, 0)
    tree = families.path(1, 2, 3, 4)
    assert genus_identity_check(tree) == (0, 4)
    assert genus_identity_check(families.complete(4)) == (3, 3)
    rng = random.Random(53)
    for _ in range(10):
        g = families.random_connected(rng, 6, 10)
        left, right = genus_identity_check(g)
        assert left == g.ecount - g.vcount + 1
        assert right == g.vcount - 1


def test_tau_base_independent_and_insert_invariant():
    rng = random.Random(59)
    for _ in range(8):
        g = families.random_connected(rng, 6, 9)
        tau = tau_of(g)
        assert all(tau_edge_sum(g, p).tau == tau for p in range(g.vcount))
        e = rng.randrange(g.ecount)
        g2, _ = insert_point(g, (e, g.edges[e].length / 3))
        assert tau_of(g2) == tau
        assert tau_of(subdivide_uniform(g, 2)) == tau


def test_tau_scale_covariance():
    g = families.theta(F(1, 2), F(1, 3), F(1, 6))
    for c in (F(2), F(1, 7), F(22, 3)):
        assert tau_of(scale(g, c)) == c * tau_of(g)


def test_apq_identity_matches_direct_and_nonnegative():
    rng = random.Random(61)
    for _ in range(10):
        g = families.random_connected(rng, 5, 8)
        p = rng.randrange(g.vcount)
        q = rng.randrange(g.vcount)
        if p == q:
            continue
        assert apq_checked(g, p, q) >= 0  # raises on route mismatch


def test_apq_banana_and_same_point():
    g = families.banana(F(1, 2), F(1, 3), F(1, 4))
    r = context(g).r(0, 1)
    assert apq_checked(g, 0, 1) == 2 * r * r / 6
    with pytest.raises(SamePoint):
        apq_identity(g, 1, 1)


def test_gradient_examples():
    circ = families.circle(F(1, 3), F(2, 3))
    grad = tau_gradient(circ)
    assert grad.entries == (F(1, 12), F(1, 12))
    assert grad.bridge_edges == ()
    tree = families.path(1, 2)
    grad = tau_gradient(tree)
    assert grad.entries == (F(1, 4), F(1, 4))
    assert grad.bridge_edges == (0, 1)
    loop = families.circle(F(1))
    assert tau_gradient(loop).entries == (F(1, 12),)


def test_gradient_euler_identity():
    rng = random.Random(67)
    for g in (
        families.complete(4),
        families.diamond(F(2, 5)),
        families.random_connected(rng, 6, 9),
        families.random_connected(rng, 6, 9),
    ):
        grad = tau_gradient(g)
        assert sum(L * d for (_, _, L), d in zip(g.edges, grad.entries)) == tau_of(g)


def test_gradient_finite_perturbation():
    # exact finite-difference identity for a single length change
    rng = random.Random(71)
    for _ in range(10):
        g = families.random_bridgeless(rng, 5, 9)
        i = rng.randrange(g.ecount)
        a, b, L = g.edges[i]
        if a == b:
            continue
        x = families.random_length(rng)
        modified = build_graph(
            g.vcount,
            [(ea, eb, el + (x if j == i else 0)) for j, (ea, eb, el) in enumerate(g.edges)],
        )
        from mgt.tau import deleted_apq

        a_del = deleted_apq(g, i)
        denom = L + context(g).edge_profiles(0)[i].res_deleted
        assert tau_of(modified) == tau_of(g) + x / 12 - x * a_del / (denom * (denom + x))


def test_bridgeless_identity():
    circ = families.circle(F(1, 2), F(1, 2))
    assert tau_bridgeless_identity(circ) == (F(1, 12), F(1, 12))
    lhs, rhs = tau_bridgeless_identity(families.complete(4))
    assert lhs == rhs
    dia = families.diamond(1)
    assert tau_bridgeless_identity(dia) == (F(1, 3), F(1, 3))
    with pytest.raises(HasBridge):
        tau_bridgeless_identity(families.segment(1))


def test_bounds_suite():
    k4 = families.complete(4)
    checks = {c.bound: c for c in lower_bound_suite(k4)}
    assert checks["equal-length"].applicable
    assert checks["equal-length"].lhs == F(1, 48)
    assert checks["equal-length"].holds
    assert checks["tau-upper-twelfth-bridgeless"].holds
    assert all(c.holds is not False for c in checks.values())
    seg = families.segment(1)
    checks = {c.bound: c for c in lower_bound_suite(seg)}
    assert not checks["tau-upper-twelfth-bridgeless"].applicable
    assert checks["tau-tree-equality"].holds
    circ = families.circle(F(7))
    checks = {c.bound: c for c in lower_bound_suite(circ)}
    assert checks["deleted-resistance-sum"].holds


def test_bounds_random_graphs_never_violate():
    rng = random.Random(73)
    for _ in range(10):
        g = families.random_connected(rng, 6, 10)
        assert all(c.holds is not False for c in lower_bound_suite(g))
