import dataclasses
import random

import pytest

from atoroidal import (
    CurveCode,
    ExceptionKind,
    GluingChoice,
    Leaf,
    canonical_code,
    cut_along,
    decompose,
    enumerate_curves,
    exception,
    find_nontrivial_curve,
    is_atoroidal,
    is_isomorphic,
    reassemble,
    recombine,
    torus_graph,
)
from atoroidal.canon import canonical_key
from atoroidal.decompose import Gluing, depth, glue, granny, leaves, tree_from_text, tree_to_text
from atoroidal.errors import BadDegree, InconsistentGluing, ParseError, TrivialCurve
from atoroidal.planemap import build, disjoint_union

TREFOIL = exception(ExceptionKind.TREFOIL_PROJECTION)


def leaf_codes(t):
    return sorted(c for g in leaves(t) for c in canonical_key(g))


def test_cut_granny_neck():
    g = granny()
    n, c = find_nontrivial_curve(g)
    a, b, rec = cut_along(g, c)
    assert n == 2 and rec.n == 2
    assert is_isomorphic(a, TREFOIL) and is_isomorphic(b, TREFOIL)
    assert glue(a, b, rec) == g


def test_cut_disjoint_union():
    g = disjoint_union(torus_graph(3), TREFOIL)
    n, c = find_nontrivial_curve(g)
    assert n == 0
    a, b, rec = cut_along(g, c)
    assert sorted([a.vertex_count, b.vertex_count]) == [3, 6]
    assert glue(a, b, rec) == g


def test_cut_vertex_sum_of_t3_and_trefoil():
    g = recombine(torus_graph(3), 0, TREFOIL, 0)
    assert g.vertex_count == 7
    n, c = find_nontrivial_curve(g)
    assert n == 4
    a, b, rec = cut_along(g, c)
    assert sorted([a.vertex_count, b.vertex_count]) == [3, 6]
    assert {canonical_code(a), canonical_code(b)} == {canonical_code(torus_graph(3)), canonical_code(TREFOIL)}
    assert glue(a, b, rec) == g


def test_cut_rejects_trivial_and_six():
    t3 = torus_graph(3)
    with pytest.raises(TrivialCurve):
        cut_along(t3, enumerate_curves(t3, 4)[0])
    with pytest.raises(BadDegree):
        cut_along(t3, enumerate_curves(t3, 6)[0])


@pytest.mark.parametrize("g", [torus_graph(3), exception(ExceptionKind.UNKNOT_PROJECTION), TREFOIL])
def test_atoroidal_graphs_are_leaves(g):
    t = decompose(g)
    assert isinstance(t, Leaf)
    assert reassemble(t) == g


def test_granny_tree():
    g = granny()
    t = decompose(g)
    assert t.n == 2
    assert isinstance(t.left, Leaf) and isinstance(t.right, Leaf)
    assert all(is_isomorphic(x, TREFOIL) for x in leaves(t))
    assert reassemble(t) == g


def test_corrupted_gluing_detected():
    t = decompose(granny())
    rec = t.gluing
    broken = dataclasses.replace(rec, side_vertices=(rec.side_vertices[0][:-1], rec.side_vertices[1]))
    with pytest.raises(InconsistentGluing):
        reassemble(dataclasses.replace(t, gluing=broken))
    swapped = dataclasses.replace(rec, ports=((rec.ports[0][0], rec.ports[0][0]), rec.ports[1]))
    with pytest.raises(InconsistentGluing):
        reassemble(dataclasses.replace(t, gluing=swapped))


def test_corrupted_four_port_gluing():
    g = recombine(torus_graph(3), 0, TREFOIL, 0)
    t = decompose(g)
    rec = t.gluing
    assert rec.n == 4
    bad = dataclasses.replace(rec, ports=(rec.ports[0][:3] + (0,), rec.ports[1]))
    with pytest.raises(InconsistentGluing):
        reassemble(dataclasses.replace(t, gluing=bad))


def test_tree_text_round_trip():
    g = recombine(granny(), 0, torus_graph(3), 2, GluingChoice(1, True))
    t = decompose(g)
    again = tree_from_text(tree_to_text(t))
    assert again == t
    assert reassemble(again) == g


def test_tree_text_errors():
    with pytest.raises(ParseError):
        tree_from_text("cut n=2; e0.0 f0 e1.0 f1 | V=6")
    with pytest.raises(ParseError):
        tree_from_text("leaf\n  AG 1 0\n  0: 0.1 0.0 0.3 0.2\nleaf\n")


def test_gluing_text_round_trip():
    rec = Gluing(4, 7, ((0, 2), (1, 3, 4, 5, 6)), ((8, 9, 10, 11), (20, 23, 22, 21)), (0, 1))
    assert Gluing.parse(4, str(rec)) == rec
    with pytest.raises(ParseError):
        Gluing.parse(2, "V=3 sides=1")


def test_random_composites_round_trip(store12):
    from atoroidal.enumeration import random_composite

    pieces = [g for g in store12.graphs() if g.vertex_count >= 3]
    rng = random.Random(11)
    for _ in range(20):
        g = random_composite(pieces, rng, 14, parts=rng.choice([2, 3]))
        t = decompose(g)
        assert is_isomorphic(reassemble(t), g)
        assert all(is_atoroidal(x) for x in leaves(t))
        assert depth(t) <= 2 * g.vertex_count + 2


def test_children_never_grow(store12):
    from atoroidal.enumeration import random_composite

    pieces = [g for g in store12.graphs() if g.vertex_count >= 3]
    rng = random.Random(3)

    def walk(t, parent_v):
        if isinstance(t, Leaf):
            assert t.graph.vertex_count <= parent_v
            return
        for child in (t.left, t.right):
            walk(child, t.gluing.vertex_count)

    for _ in range(10):
        g = random_composite(pieces, rng, 14, parts=3)
        walk(decompose(g), g.vertex_count)


def test_leaf_multiset_invariant_under_relabel():
    from test_canon import shuffle_darts

    g = recombine(granny(), 1, torus_graph(3), 0)
    ref = leaf_codes(decompose(g))
    rng = random.Random(2)
    for _ in range(5):
        assert leaf_codes(decompose(shuffle_darts(g, rng))) == ref


def test_free_loop_pieces():
    g = build(0, [], free_loops=2)
    t = decompose(g)
    assert not isinstance(t, Leaf) and t.n == 0
    assert reassemble(t) == g
    assert [x.free_loops for x in leaves(t)] == [1, 1]


def test_bad_curve_code_rejected():
    with pytest.raises(ValueError):
        cut_along(torus_graph(3), CurveCode(((0, 0), (1, 0)), (0, 0)))
