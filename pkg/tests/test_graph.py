import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mgt.errors import (
    BadM,
    BadPoint,
    BadVertexId,
    DisconnectedGraph,
    NonPositiveLength,
    NonPositiveScale,
)
from mgt.graph import (
    bridges,
    build_graph,
    genus,
    insert_point,
    insert_points,
    normalize_point,
    scale,
    subdivide_uniform,
    total_length,
)
from mgt import families
from oracles import bridges_by_deletion


def test_build_single_edge():
    g = build_graph(2, [(0, 1, 1)])
    assert g.vcount == 2 and g.ecount == 1
    assert total_length(g) == 1


def test_build_two_banana():
    g = build_graph(2, [(0, 1, F(1, 2)), (0, 1, F(1, 2))])
    assert total_length(g) == 1
    assert genus(g) == 1


def test_build_disconnected_rejected():
    with pytest.raises(DisconnectedGraph):
        build_graph(3, [(0, 1, 1), (2, 2, 1)])


def test_build_bad_inputs():
    with pytest.raises(NonPositiveLength):
        build_graph(2, [(0, 1, 0)])
    with pytest.raises(NonPositiveLength):
        build_graph(2, [(0, 1, F(-1, 3))])
    with pytest.raises(BadVertexId):
        build_graph(2, [(0, 2, 1)])


def test_total_length_examples():
    assert total_length(families.complete(4, 1)) == 1
    assert total_length(families.diamond(F(2, 7))) == F(10, 7)


def test_genus_examples():
    assert genus(families.random_tree(random.Random(0), 5)) == 0
    assert genus(families.circle(F(1))) == 1
    for v in range(2, 8):
        assert genus(families.complete(v)) == (v - 1) * (v - 2) // 2


def test_scale():
    circ = families.circle(F(1))
    assert total_length(scale(circ, 3)) == 3
    g = families.diamond(F(3, 5))
    assert scale(g, 1) == g
    n = scale(g, 1 / total_length(g))
    assert total_length(n) == 1
    with pytest.raises(NonPositiveScale):
        scale(g, 0)


def test_insert_point_midpoint():
    seg = families.segment(1)
    g2, w = insert_point(seg, (0, F(1, 2)))
    assert g2.vcount == 3 and g2.ecount == 2
    assert {e.length for e in g2.edges} == {F(1, 2)}
    assert w == 2


def test_insert_point_boundary_is_identity():
    seg = families.segment(1)
    g2, w = insert_point(seg, (0, F(0)))
    assert g2 == seg and w == 0
    g2, w = insert_point(seg, (0, F(1)))
    assert g2 == seg and w == 1


def test_insert_point_on_self_loop():
    circ = families.circle(F(1))
    g2, w = insert_point(circ, (0, F(1, 3)))
    assert g2.vcount == 2 and g2.ecount == 2
    assert sorted(e.length for e in g2.edges) == [F(1, 3), F(2, 3)]


def test_insert_points_same_edge():
    seg = families.segment(1)
    g2, ids = insert_points(seg, [(0, F(3, 4)), (0, F(1, 4)), 0])
    assert g2.vcount == 4
    assert ids[2] == 0
    assert sorted(e.length for e in g2.edges) == [F(1, 4), F(1, 4), F(1, 2)]
    # offsets measured from endpoint a: ids track their points
    assert {ids[0], ids[1]} == {2, 3}


def test_subdivide_uniform():
    seg = families.segment(1)
    g3 = subdivide_uniform(seg, 3)
    assert g3.ecount == 3 and g3.vcount == 4
    assert {e.length for e in g3.edges} == {F(1, 3)}
    assert subdivide_uniform(seg, 1) == seg
    circ = families.circle(F(1))
    g2 = subdivide_uniform(circ, 2)
    assert g2.vcount == 2 and g2.ecount == 2
    with pytest.raises(BadM):
        subdivide_uniform(seg, 0)


def test_bridges_examples():
    tree = families.path(1, 2, 3)
    assert bridges(tree) == [0, 1, 2]
    assert bridges(families.circle(1, 2)) == []
    dumbbell = build_graph(
        6,
        [(0, 1, 1), (1, 2, 1), (2, 0, 1), (2, 3, 1), (3, 4, 1), (4, 5, 1), (5, 3, 1)],
    )
    assert bridges(dumbbell) == [3]


def test_bridges_match_exhaustive_deletion():
    rng = random.Random(11)
    for _ in range(40):
        g = families.random_connected(rng, 6, 10)
        assert bridges(g) == bridges_by_deletion(g)


def test_handshake():
    rng = random.Random(5)
    for _ in range(20):
        g = families.random_connected(rng, 7, 12)
        assert sum(g.valence(p) for p in range(g.vcount)) == 2 * g.ecount


def test_insert_preserves_genus_and_length():
    rng = random.Random(9)
    for _ in range(15):
        g = families.random_connected(rng, 6, 9)
        e = rng.randrange(g.ecount)
        g2, _ = insert_point(g, (e, g.edges[e].length / 3))
        assert genus(g2) == genus(g)
        assert total_length(g2) == total_length(g)


def test_subdivide_counts_property():
    rng = random.Random(13)
    for m in (2, 3, 4):
        g = families.random_connected(rng, 5, 8)
        gm = subdivide_uniform(g, m)
        assert gm.ecount == m * g.ecount
        assert gm.vcount == g.vcount + (m - 1) * g.ecount
        assert genus(gm) == genus(g)
        assert total_length(gm) == total_length(g)


@given(st.fractions(min_value=F(1, 50), max_value=50))
@settings(max_examples=40, deadline=None)
def test_scale_total_length_exact(c):
    g = families.diamond(F(2, 3))
    assert total_length(scale(g, c)) == c * total_length(g)


def test_normalize_point_validation():
    g = families.segment(1)
    with pytest.raises(BadPoint):
        normalize_point(g, 5)
    with pytest.raises(BadPoint):
        normalize_point(g, (0, F(3, 2)))
    with pytest.raises(BadPoint):
        normalize_point(g, (1, F(1, 2)))
