import pytest

from atoroidal import (
    ExceptionKind,
    build,
    exception,
    face_vector,
    from_rotation_lists,
    mirror,
    parse_planar_code,
    parse_planar_codes,
    relabel,
    to_planar_code,
    torus_graph,
)
from atoroidal.errors import BadRotationOrbit, NotInvolution, NotSpherical, ParseError, PlaneMapError
from atoroidal.planemap import components, disjoint_union


def _edge(a, b):
    return (min(a, b), max(a, b))


def octahedron():
    nbrs = {0: [1, 2, 3, 4], 5: [4, 3, 2, 1], 1: [0, 4, 5, 2], 2: [0, 1, 5, 3], 3: [0, 2, 5, 4], 4: [0, 3, 5, 1]}
    return from_rotation_lists([[_edge(v, w) for w in nbrs[v]] for v in range(6)])


def test_octahedron_from_tables():
    g = octahedron()
    assert g.vertex_count == 6 and g.face_count == 8
    assert face_vector(g) == {3: 8}
    assert g.vertex_count - g.edge_count + g.face_count == 2


def test_unknot_from_empty_tables():
    g = build(0, [], free_loops=1)
    assert g.vertex_count == 0 and g.free_loops == 1
    assert face_vector(g) == {0: 2}


def test_mate_fixed_point_rejected():
    mate = list(exception(ExceptionKind.FIGURE_EIGHT).mate)
    mate[0] = 0
    with pytest.raises(NotInvolution):
        build(1, mate)


def test_non_involution_rejected():
    with pytest.raises(NotInvolution):
        build(1, [1, 2, 3, 0])


def test_bad_rotation_orbit():
    mate = [2, 3, 0, 1]
    with pytest.raises(BadRotationOrbit):
        build(1, mate, rotation_table=[1, 0, 3, 2])


def test_rotation_table_relabels():
    g = exception(ExceptionKind.FIGURE_EIGHT)
    # the same map written with slots listed in the order 0, 2, 1, 3
    perm = [0, 2, 1, 3]
    inv = [perm.index(i) for i in range(4)]
    mate = [inv[g.mate[perm[d]]] for d in range(4)]
    rotation = [inv[(perm[d] + 1) % 4] for d in range(4)]
    h = build(1, mate, rotation_table=rotation)
    assert h.mate == g.mate


def test_non_spherical_rejected():
    # a single vertex whose loops interleave lives on the torus
    with pytest.raises(NotSpherical):
        build(1, [2, 3, 0, 1])


def test_bad_lengths():
    with pytest.raises(PlaneMapError):
        build(2, [1, 0])


@pytest.mark.parametrize(
    "kind, vertices, fv",
    [
        (ExceptionKind.UNKNOT_PROJECTION, 0, {0: 2}),
        (ExceptionKind.FIGURE_EIGHT, 1, {1: 2, 2: 1}),
        (ExceptionKind.HOPF_PROJECTION, 2, {2: 4}),
        (ExceptionKind.TREFOIL_PROJECTION, 3, {2: 3, 3: 2}),
    ],
)
def test_exceptions(kind, vertices, fv):
    g = exception(kind)
    assert g.vertex_count == vertices
    assert face_vector(g) == fv


def test_hopf_has_two_double_edges():
    g = exception(ExceptionKind.HOPF_PROJECTION)
    pairs = sorted(tuple(sorted((a >> 2, b >> 2))) for a, b in g.edges)
    assert pairs == [(0, 1)] * 4


def test_trefoil_faces():
    faces = exception(ExceptionKind.TREFOIL_PROJECTION).faces
    assert sorted(len(f) for f in faces) == [2, 2, 2, 3, 3]


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8, 16, 64])
def test_torus_graph_sizes(n):
    g = torus_graph(n)
    assert g.vertex_count == 2 * n
    assert g.edge_count == 4 * n
    assert g.face_count == 2 * n + 2


def test_torus_face_vectors():
    assert face_vector(torus_graph(3)) == {3: 8}
    assert face_vector(torus_graph(4)) == {3: 8, 4: 2}
    assert face_vector(torus_graph(7)) == {3: 14, 7: 2}


def test_torus_graph_rejects_small():
    with pytest.raises(ValueError):
        torus_graph(2)


def test_faces_deterministic():
    g = torus_graph(5)
    assert g.faces == build(g.vertex_count, list(g.mate)).faces


def test_faces_partition_darts():
    g = torus_graph(6)
    darts = sorted(d for f in g.faces for d in f)
    assert darts == list(range(g.dart_count))


def test_planar_code_round_trip(corpus):
    for g in corpus:
        assert parse_planar_code(to_planar_code(g)) == g


def test_parse_many_and_comments():
    text = "# two graphs\n" + to_planar_code(torus_graph(3)) + "\n" + to_planar_code(exception(ExceptionKind.HOPF_PROJECTION))
    gs = parse_planar_codes(text)
    assert [g.vertex_count for g in gs] == [6, 2]


@pytest.mark.parametrize(
    "text, line",
    [
        ("AG 1 0\n0: 0.2 0.3 0.0 9.9\n", 2),
        ("AG x 0\n", 1),
        ("AG 1 0\n0: 0.1 0.0 0.3\n", 2),
        ("AG 2 0\n0: 0.1 0.0 0.3 0.2\n", None),
    ],
)
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_planar_codes(text)
    if line is not None:
        assert info.value.line == line


def test_mirror_is_involution(corpus):
    for g in corpus:
        assert mirror(mirror(g)) == g
        assert face_vector(mirror(g)) == face_vector(g)


def test_relabel_preserves_faces():
    g = torus_graph(4)
    h = relabel(g, [3, 1, 7, 0, 2, 6, 4, 5], [1, 0, 3, 2, 1, 0, 3, 2])
    assert face_vector(h) == face_vector(g)
    assert h.mate != g.mate


def test_components_of_disjoint_union():
    a, b = torus_graph(3), exception(ExceptionKind.TREFOIL_PROJECTION)
    u = disjoint_union(a, b)
    assert not u.is_connected and u.component_count == 2
    parts = components(u)
    assert sorted(p.vertex_count for p, _ in parts) == [3, 6]


def test_free_loops_are_components():
    u = build(0, [], free_loops=2)
    assert u.component_count == 2 and not u.is_connected
    assert face_vector(u) == {0: 4}
