import random

import pytest

from atoroidal import (
    CanonicalCode,
    Chirality,
    ExceptionKind,
    apply_surgery,
    build,
    canonical_code,
    exception,
    from_canonical_code,
    from_rotation_lists,
    is_irreducible,
    is_isomorphic,
    legal_surgeries,
    mirror,
    torus_graph,
)
from atoroidal.canon import FORMAT_VERSION, canonical_key
from atoroidal.errors import Disconnected, ParseError
from atoroidal.planemap import disjoint_union


def shuffle_darts(g, rng):
    """Renumber every dart at random, handing the embedding over as a rotation table."""
    n = g.dart_count
    order = list(range(g.vertex_count))
    rng.shuffle(order)
    new = [0] * n
    for nv, v in enumerate(order):
        slots = list(range(4))
        rng.shuffle(slots)
        for k, s in enumerate(slots):
            new[4 * v + s] = 4 * nv + k
    mate = [0] * n
    rotation = [0] * n
    for d in range(n):
        mate[new[d]] = new[g.mate[d]]
        rotation[new[d]] = new[(d & ~3) | ((d + 1) & 3)]
    return build(g.vertex_count, mate, rotation_table=rotation, free_loops=g.free_loops)


def test_code_format():
    code = canonical_code(torus_graph(3))
    assert code.data[0] == FORMAT_VERSION
    assert code.vertex_count == 6
    assert code.hex() == code.hex().lower()
    assert CanonicalCode.fromhex(code.hex()) == code


def test_random_relabelings_of_t3():
    g = torus_graph(3)
    rng = random.Random(5)
    ref = canonical_code(g)
    for _ in range(100):
        h = shuffle_darts(g, rng)
        assert canonical_code(h) == ref
        assert canonical_code(h, Chirality.ORIENTED) == canonical_code(g, Chirality.ORIENTED)


def test_mirror_collides_mod_reflection():
    g = apply_surgery(torus_graph(4), legal_surgeries(torus_graph(4))[0])
    assert canonical_code(mirror(g)) == canonical_code(g)


def test_chiral_maps_separate_when_oriented(corpus):
    chiral = [
        g for g in corpus
        if canonical_code(g, Chirality.ORIENTED) != canonical_code(mirror(g), Chirality.ORIENTED)
    ]
    assert chiral, "expected chiral graphs up to 12 crossings"
    for g in chiral:
        assert canonical_code(g) == canonical_code(mirror(g))


def test_bigon_closures_differ():
    hopf = exception(ExceptionKind.HOPF_PROJECTION)
    chain = from_rotation_lists([["a", "b", "x", "x"], ["b", "a", "y", "y"]])
    assert canonical_code(hopf) != canonical_code(chain)
    assert is_irreducible(hopf) and not is_irreducible(chain)


def test_rebuild_is_idempotent(corpus):
    for g in corpus:
        for mode in Chirality:
            c = canonical_code(g, mode)
            h = from_canonical_code(c)
            assert canonical_code(h, mode) == c
            assert is_isomorphic(g, h, mode)


def test_surgery_results_on_t4_pairwise_isomorphic():
    t4 = torus_graph(4)
    results = [apply_surgery(t4, m) for m in legal_surgeries(t4)]
    assert len(results) == 16
    for a in results:
        for b in results:
            assert is_isomorphic(a, b)


def test_non_isomorphic_pairs():
    assert not is_isomorphic(torus_graph(4), torus_graph(5))
    assert not is_isomorphic(exception(ExceptionKind.TREFOIL_PROJECTION), exception(ExceptionKind.HOPF_PROJECTION))


def test_disconnected_needs_key():
    u = disjoint_union(torus_graph(3), exception(ExceptionKind.TREFOIL_PROJECTION))
    with pytest.raises(Disconnected):
        canonical_code(u)
    key = canonical_key(u)
    assert len(key) == 2
    rng = random.Random(1)
    assert canonical_key(shuffle_darts(u, rng)) == key


def test_unknot_code():
    c = canonical_code(exception(ExceptionKind.UNKNOT_PROJECTION))
    assert c.vertex_count == 0
    assert from_canonical_code(c).free_loops == 1


@pytest.mark.parametrize("text", ["zz", "", "02000100000000"])
def test_bad_hex(text):
    with pytest.raises(ParseError):
        from_canonical_code(CanonicalCode.fromhex(text))
