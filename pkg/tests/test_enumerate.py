import pytest

from atoroidal import (
    Chirality,
    ExceptionKind,
    GluingChoice,
    RecombinationMode,
    apply_surgery,
    canonical_code,
    descendant_set,
    enumerate_atoroidal,
    enumerate_recombinations,
    exception,
    face_vector,
    initial_objects,
    legal_surgeries,
    oracle_enumerate,
    recombine,
    torus_graph,
)
from atoroidal.enumeration import (
    EnumerationStore,
    compiled_sphere_maps,
    iter_sphere_maps,
    oracle_maps,
    read_checkpoint,
    verify_predecessors,
)
from atoroidal.errors import ForbiddenPiece, IllegalMove, LimitExceeded, ParseError

K = ExceptionKind


def code(g, mode=Chirality.MOD_REFLECTION):
    return canonical_code(g, mode)


def t4_plus():
    t4 = torus_graph(4)
    return apply_surgery(t4, legal_surgeries(t4)[0])


# ------------------------------------------------------------ initial objects
def test_initial_objects_small():
    assert {code(g) for g in initial_objects(3)} == {code(exception(k)) for k in K}


@pytest.mark.parametrize("max_v, tori", [(8, [3, 4]), (12, [3, 4, 5, 6]), (13, [3, 4, 5, 6])])
def test_initial_objects_tori(max_v, tori):
    got = initial_objects(max_v)
    assert len(got) == 4 + len(tori)
    assert [g.vertex_count for g in got[4:]] == [2 * n for n in tori]


# ---------------------------------------------------------------- enumeration
def test_levels_to_seven():
    s = enumerate_atoroidal(7)
    assert s.counts() == {0: 1, 1: 1, 2: 1, 3: 1, 4: 0, 5: 0, 6: 1, 7: 0}


def test_levels_to_nine():
    s = enumerate_atoroidal(9)
    assert s.levels[8] == [code(torus_graph(4))]
    assert s.levels[9] == [code(t4_plus())]


def test_limit():
    with pytest.raises(LimitExceeded):
        enumerate_atoroidal(17)
    with pytest.raises(LimitExceeded):
        enumerate_atoroidal(10, limit=9)


def test_store_invariants(store12):
    store12.check()
    assert verify_predecessors(store12) == []
    for c in store12.codes():
        m = store12.meta[c]
        assert m.hyperbolic == (m.exception is None)
        assert m.hyperbolic == (min(face_vector(m.graph)) >= 3)


def test_gap_levels_stay_empty(store12):
    assert all(store12.counts()[v] == 0 for v in (4, 5, 7))


def test_parallel_matches_serial():
    a = enumerate_atoroidal(12, threads=1)
    b = enumerate_atoroidal(12, threads=4)
    assert a.checkpoint_text() == b.checkpoint_text()


def test_oriented_mode_counts_chiral_pairs(store12):
    s = enumerate_atoroidal(12, Chirality.ORIENTED)
    for v in range(13):
        assert s.counts()[v] >= store12.counts()[v]
    assert sum(s.counts().values()) == sum(store12.counts().values()) + 4


# ----------------------------------------------------------------- checkpoints
def test_checkpoint_format(store12):
    text = store12.checkpoint_text()
    lines = text.splitlines()
    assert lines[0] == "ATOROv1 max_v=12 mode=mod-reflection"
    assert lines[1] == "L 0 1"
    max_v, mode, levels = read_checkpoint(text)
    assert max_v == 12 and mode is Chirality.MOD_REFLECTION
    assert levels == store12.levels


def test_resume_matches_fresh(tmp_path, store12):
    path = tmp_path / "nine.ckpt"
    enumerate_atoroidal(9, checkpoint=str(path))
    resumed = enumerate_atoroidal(12, resume=path.read_text())
    assert resumed.checkpoint_text() == store12.checkpoint_text()


def test_truncated_checkpoint_resumes(store12):
    text = store12.checkpoint_text()
    cut = "\n".join(text.splitlines()[:-3]) + "\n"
    _, _, levels = read_checkpoint(cut)
    assert 12 not in levels
    assert enumerate_atoroidal(12, resume=cut).checkpoint_text() == text


@pytest.mark.parametrize(
    "text",
    ["", "HELLO\n", "ATOROv1 max_v=x mode=mod-reflection\n", "ATOROv1 max_v=3 mode=mod-reflection\nL 0 1\nzz\n",
     "ATOROv1 max_v=3 mode=mod-reflection\nX 0 1\n"],
)
def test_corrupt_checkpoints(text):
    with pytest.raises(ParseError):
        read_checkpoint(text)


def test_resume_mode_mismatch(store12):
    with pytest.raises(ParseError):
        enumerate_atoroidal(12, Chirality.ORIENTED, resume=store12.checkpoint_text())


# ---------------------------------------------------------------- descendants
def test_descendants_small():
    assert descendant_set(4, 9) == {code(t4_plus())}
    assert descendant_set(4, 8) == set()


def test_descendant_chain(store12):
    c4, c5, c6 = (descendant_set(n, 12, store12) for n in (4, 5, 6))
    assert c6 <= c5 <= c4
    assert c5 and not c6  # T_6 already has 12 vertices
    assert code(apply_surgery(torus_graph(5), legal_surgeries(torus_graph(5))[0])) in c5


# -------------------------------------------------------------- recombination
def test_t3_with_t3():
    t3 = torus_graph(3)
    for v1 in (0, 3):
        for v2 in (1, 5):
            for choice in GluingChoice.all():
                assert recombine(t3, v1, t3, v2, choice, RecombinationMode.BASIC_POLYHEDRA).vertex_count == 10


def test_gluing_choices():
    choices = GluingChoice.all()
    assert len(choices) == 8 and len(set(choices)) == 8


def test_trefoil_with_trefoil():
    tre = exception(K.TREFOIL_PROJECTION)
    g = recombine(tre, 0, tre, 0)
    assert g.vertex_count == 4 and g.is_connected
    assert 2 in face_vector(g)
    with pytest.raises(ForbiddenPiece):
        recombine(tre, 0, tre, 0, mode=RecombinationMode.BASIC_POLYHEDRA)


@pytest.mark.parametrize("kind", [K.UNKNOT_PROJECTION, K.FIGURE_EIGHT, K.HOPF_PROJECTION])
def test_forbidden_exceptions(kind):
    with pytest.raises(ForbiddenPiece):
        recombine(exception(kind), 0, torus_graph(3), 0)


def test_recombine_bad_vertex():
    with pytest.raises(IllegalMove):
        recombine(torus_graph(3), 6, torus_graph(3), 0)


def test_basic_polyhedra_to_nine(store12):
    found = enumerate_recombinations(store12, 9, RecombinationMode.BASIC_POLYHEDRA)
    assert {code(torus_graph(3)), code(torus_graph(4)), code(t4_plus())} <= found
    assert not any(c.vertex_count == 7 for c in found)
    assert code(exception(K.TREFOIL_PROJECTION)) not in found


def test_prime_projections_to_six(store12):
    tre = exception(K.TREFOIL_PROJECTION)
    found = enumerate_recombinations(store12, 6, RecombinationMode.PRIME_PROJECTIONS)
    sums = {code(recombine(tre, 0, tre, 0, c)) for c in GluingChoice.all()}
    assert sums <= found


def test_recombination_is_recursive(store12):
    tre = exception(K.TREFOIL_PROJECTION)
    found = enumerate_recombinations(store12, 6, RecombinationMode.PRIME_PROJECTIONS)
    twice = recombine(recombine(tre, 0, tre, 0), 0, tre, 0)
    assert code(twice) in found


def test_empty_store():
    assert enumerate_recombinations(EnumerationStore(max_v=9), 9) == set()


# --------------------------------------------------------------------- oracle
@pytest.mark.parametrize("nv", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("prune", [True, False])
@pytest.mark.parametrize("orderly", [True, False])
def test_compiled_kernel_matches_python(nv, prune, orderly):
    py = sorted(iter_sphere_maps(nv, prune, orderly))
    assert sorted(compiled_sphere_maps(nv, prune, orderly)) == py


@pytest.mark.parametrize("nv", [1, 2, 3, 4, 5, 6])
def test_orderly_generation_is_exact(nv):
    tables = compiled_sphere_maps(nv, prune=False, orderly=True)
    assert len(tables) == len(set(code(_b(nv, t)) for t in tables))
    assert set(oracle_maps(nv, prune=False)) == set(oracle_maps(nv, prune=False, orderly=False))


def _b(nv, table):
    from atoroidal import build

    return build(nv, list(table))


@pytest.mark.parametrize("nv, count", [(1, 1), (2, 3), (3, 7), (4, 30), (5, 124), (6, 733)])
def test_map_counts(nv, count):
    assert len(oracle_maps(nv, prune=False)) == count


def test_pruned_oracle_agrees_with_unpruned():
    assert oracle_enumerate(7, prune=True) == oracle_enumerate(7, prune=False)


def test_oracle_small_levels():
    got = oracle_enumerate(6)
    assert got[3] == {code(exception(K.TREFOIL_PROJECTION))}
    assert got[5] == set()
    assert got[6] == {code(torus_graph(3))}


def test_oracle_limit():
    with pytest.raises(LimitExceeded):
        oracle_enumerate(10)


def test_oriented_oracle_matches(store12):
    mode = Chirality.ORIENTED
    ref = enumerate_atoroidal(8, mode)
    got = oracle_enumerate(8, mode)
    for v in range(9):
        assert got[v] == set(ref.levels[v])
