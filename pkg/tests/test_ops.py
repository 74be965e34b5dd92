import random
from fractions import Fraction as F

import pytest

from mgt import families
from mgt.errors import BridgeDeletion, NonPositiveLength, NotNormalized, SamePoint
from mgt.graph import build_graph, normalize, subdivide_uniform, total_length
from mgt.ops import (
    add_edge,
    c_tower,
    contract_edge,
    da_n,
    delete_edge,
    identify_points,
    immerse,
    immerse_any,
    immerse_uniform,
    simplify_valence2,
    union_one_point,
    union_two_points,
)
from mgt.tau import apq_identity, tau_of


def closure(result):
    assert result.predicted_tau is not None, result.notes
    assert result.predicted_tau == tau_of(result.graph)
    return result


def test_delete_edge_circle():
    circ = families.circle(F(2, 5), F(3, 5))
    result = closure(delete_edge(circ, 0))
    assert result.graph.ecount == 1
    assert tau_of(result.graph) == F(3, 5) / 4


def test_delete_middle_of_diamond():
    dia = families.diamond(1)
    result = closure(delete_edge(dia, 4))
    assert tau_of(result.graph) == F(4, 12)  # a four-cycle


def test_delete_bridge_rejected():
    with pytest.raises(BridgeDeletion):
        delete_edge(families.path(1, 1), 0)


def test_delete_k4_edges():
    k4 = families.complete(4)
    for i in range(6):
        closure(delete_edge(k4, i))


def test_contract_circle_arc():
    circ = families.circle(F(2, 5), F(3, 5))
    result = closure(contract_edge(circ, 0))
    assert result.graph.vcount == 1 and result.graph.ecount == 1
    assert tau_of(result.graph) == F(3, 5) / 12


def test_contract_tree_edge_drops_quarter():
    tree = families.path(1, 2, 4)
    result = contract_edge(tree, 1)
    assert result.formula_id == "bridge-contraction"
    assert result.predicted_tau == tau_of(tree) - F(2, 4)
    closure(result)


def test_contract_self_loop():
    g = build_graph(2, [(0, 1, 1), (0, 1, 1), (1, 1, F(1, 2))])
    result = contract_edge(g, 2)
    assert result.formula_id == "loop-contraction"
    closure(result)


def test_contract_k4_edge():
    closure(contract_edge(families.complete(4), 2))


def test_identify_banana_becomes_wedge():
    g = families.banana(F(1, 4), F(1, 4), F(1, 2))
    result = closure(identify_points(g, 0, 1))
    assert result.graph.vcount == 1
    assert tau_of(result.graph) == total_length(g) / 12


def test_identify_segment_endpoints_is_circle():
    seg = families.segment(F(5, 3))
    result = closure(identify_points(seg, 0, 1))
    assert tau_of(result.graph) == F(5, 3) / 12
    with pytest.raises(SamePoint):
        identify_points(seg, 1, 1)


def test_identify_random():
    rng = random.Random(79)
    for _ in range(8):
        g = families.random_connected(rng, 6, 9)
        if g.vcount < 2:
            continue
        closure(identify_points(g, 0, g.vcount - 1))


def test_add_edge_examples():
    seg = families.segment(1)
    result = closure(add_edge(seg, 0, 1, 1))
    assert tau_of(result.graph) == F(2, 12)  # a circle of length 2
    circ = families.circle(F(1, 2), F(1, 2))
    closure(add_edge(circ, 0, 1, F(1, 3)))  # theta graph
    banana = families.equal_banana(3, F(3, 4))
    grown = closure(add_edge(banana, 0, 1, F(1, 4)))
    assert tau_of(grown.graph) == F(4 * 4 - 2 * 4 + 4, 12 * 16)  # equal 4-banana, length 1
    with pytest.raises(NonPositiveLength):
        add_edge(seg, 0, 1, 0)


def test_add_self_loop():
    seg = families.segment(1)
    result = closure(add_edge(seg, 0, 0, F(1, 2)))
    assert tau_of(result.graph) == F(1, 4) + F(1, 24)


def test_union_one_point():
    c1 = families.circle(F(1))
    c2 = families.circle(F(1))
    result = closure(union_one_point(c1, 0, c2, 0))
    assert tau_of(result.graph) == F(1, 6)
    mixed = closure(union_one_point(families.circle(F(1)), 0, families.segment(F(1, 2)), 1))
    assert mixed.predicted_tau == F(1, 12) + F(1, 8)


def test_union_one_point_apq_additive():
    c1 = families.circle(F(1, 2), F(1, 2))
    seg = families.segment(F(2, 3))
    wedge = union_one_point(c1, 1, seg, 0).graph
    # p = 0 in the circle part, q = the segment's far end (relabeled to 2)
    assert apq_identity(wedge, 0, 2) == apq_identity(c1, 0, 1) + 0


def test_union_two_points_two_segments_make_circle():
    sa, sb = families.segment(F(2, 5)), families.segment(F(3, 5))
    result = closure(union_two_points(sa, sb, (0, 1), (0, 1)))
    assert tau_of(result.graph) == F(1, 12)


def test_union_two_points_random():
    rng = random.Random(83)
    for _ in range(6):
        g1 = families.random_connected(rng, 5, 7)
        g2 = families.random_connected(rng, 4, 6)
        if g1.vcount < 2 or g2.vcount < 2:
            continue
        closure(union_two_points(g1, g2, (0, g1.vcount - 1), (0, g2.vcount - 1)))


def test_da_n_segment_gives_banana():
    for n in (1, 2, 3, 5):
        seg = families.segment(1)
        result = closure(da_n(seg, n))
        assert result.graph.ecount == n
        assert tau_of(result.graph) == F(1, 4 * n * n) + F(1, 12) * F(n - 1, n) ** 2


def test_da_n_identity_and_counts():
    g = families.diamond(F(1, 5))
    assert da_n(g, 1).graph == g
    split = da_n(g, 3)
    assert split.graph.ecount == 15
    assert total_length(split.graph) == total_length(g)
    closure(split)


def test_da_n_compose_with_subdivision():
    g = families.theta(F(1, 2), F(1, 3), F(1, 6))
    from mgt.ops import parallel_sum

    for m, n in ((2, 2), (3, 2), (2, 3)):
        built = da_n(subdivide_uniform(g, m), n)
        predicted = (
            tau_of(g) / n**2
            + total_length(g) / 12 * F(n - 1, n) ** 2
            + F(n - 1, 6 * m * n**2) * parallel_sum(g)
        )
        assert tau_of(built.graph) == predicted


def test_immerse_banana_equals_da_n():
    g = normalize(families.diamond(F(1, 5)))
    for n in (2, 3):
        beta = families.equal_banana(n)
        via_immersion = immerse_uniform(g, beta, 0, 1)
        closure(via_immersion)
        assert via_immersion.graph == da_n(g, n).graph


def test_immerse_segments_change_nothing():
    g = normalize(families.complete(4))
    result = closure(immerse_uniform(g, families.segment(1), 0, 1))
    assert result.graph == g


def test_immerse_requires_normalized():
    with pytest.raises(NotNormalized):
        immerse_uniform(families.complete(4, 2), families.segment(1), 0, 1)
    wrapped = immerse_any(families.complete(4, 2), [(families.segment(2), 0, 1)] * 6)
    assert wrapped.notes  # records the scaling it applied
    closure(wrapped)


def test_immerse_mixed_markings():
    g = normalize(families.circle(F(1, 2), F(1, 2)))
    beta = families.circle(F(1, 2), F(1, 3), F(1, 6))
    result = closure(immerse(g, [(beta, 0, 1), (beta, 1, 2)]))
    assert result.unnormalized is not None
    assert total_length(result.graph) == 1


def test_immerse_endpoint_swap_keeps_tau():
    g = normalize(families.theta(F(1, 2), F(1, 3), F(1, 6)))
    beta = families.circle(F(1, 2), F(1, 3), F(1, 6))
    base = immerse(g, [(beta, 0, 2)] * g.ecount)
    for flip in range(g.ecount):
        betas = [(beta, 2, 0) if i == flip else (beta, 0, 2) for i in range(g.ecount)]
        assert tau_of(immerse(g, betas).graph) == tau_of(base.graph)


def test_tower():
    circ = families.circle(F(1, 2), F(1, 2))
    n1 = c_tower(circ, 0, 1, 1)
    closure(n1)
    # one union step then normalization agrees
    direct = union_two_points(circ, circ, (0, 1), (0, 1)).graph
    assert n1.graph == normalize(direct)
    n2 = closure(c_tower(circ, 0, 1, 2))
    assert n2.predicted_tau == F(13, 192)
    rng = random.Random(89)
    g = normalize(families.random_connected(rng, 5, 7))
    if g.vcount >= 2:
        closure(c_tower(g, 0, g.vcount - 1, 2))


def test_simplify_valence2():
    path = families.path(1, 2, 3)
    merged = simplify_valence2(path)
    assert merged.ecount == 1 and merged.edges[0].length == 6
    assert tau_of(merged) == tau_of(path)
    circ = families.circle(F(1, 3), F(1, 3), F(1, 3))
    merged = simplify_valence2(circ)
    assert merged.vcount == 1 and merged.edges[0].length == 1
    protected = simplify_valence2(circ, protected=(0, 1, 2))
    assert protected == circ


def test_op_renumbering_deterministic():
    g1 = families.path(1, 1)
    g2 = families.path(2, 2)
    u = union_two_points(g1, g2, (0, 2), (0, 2)).graph
    # g1 keeps 0,1,2; g2's vertex 1 becomes 3
    assert u.vcount == 4
    assert u.edges[2].a == 0 and u.edges[2].b == 3
    assert u.edges[3].a == 3 and u.edges[3].b == 2
