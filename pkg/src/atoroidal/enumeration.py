"""Generating atoroidal graphs by repeated surgery, plus an exhaustive oracle.

Graphs are grown one vertex at a time: level ``V`` holds the initial objects
with ``V`` vertices together with every surgery result of a hyperbolic graph
on level ``V - 1``.  The oracle instead builds every connected 4-valent
sphere map directly and keeps the atoroidal ones.
"""

from __future__ import annotations

import enum
import logging
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Set, Tuple

from .canon import CanonicalCode, Chirality, canonical_code, from_canonical_code
from .curves import is_atoroidal
from .errors import (
    ForbiddenPiece,
    IllegalMove,
    InvariantViolation,
    LimitExceeded,
    ParseError,
)
from .planemap import ExceptionKind, PlaneMap, build, exception, min_face_size, mirror, torus_graph
from .surgery import SurgeryMove, apply_surgery, atoroidal_predecessors, legal_surgeries

log = logging.getLogger(__name__)

DEFAULT_LIMIT = 16
ORACLE_LIMIT = 9
CHECKPOINT_MAGIC = "ATOROv1"


def worker_count() -> int:
    cap = os.environ.get("ATORO_THREADS")
    n = os.cpu_count() or 1
    if cap:
        try:
            n = max(1, min(n, int(cap)))
        except ValueError:
            pass
    return n


# ------------------------------------------------------------ initial objects
def initial_objects(max_v: int) -> List[PlaneMap]:
    """Exceptions with at most ``max_v`` vertices, then ``T_n`` for ``2n <= max_v``."""
    out = [g for g in (exception(k) for k in ExceptionKind) if g.vertex_count <= max_v]
    n = 3
    while 2 * n <= max_v:
        out.append(torus_graph(n))
        n += 1
    return out


def _exception_codes(mode: Chirality) -> Dict[CanonicalCode, ExceptionKind]:
    return {canonical_code(exception(k), mode): k for k in ExceptionKind}


# ------------------------------------------------------------------- store
@dataclass
class EntryMeta:
    graph: PlaneMap
    exception: Optional[ExceptionKind] = None
    torus_n: Optional[int] = None
    hyperbolic: bool = True
    predecessors: List[Tuple[CanonicalCode, SurgeryMove]] = field(default_factory=list)
    children: Set[CanonicalCode] = field(default_factory=set)


@dataclass
class EnumerationStore:
    max_v: int
    chirality: Chirality = Chirality.MOD_REFLECTION
    levels: Dict[int, List[CanonicalCode]] = field(default_factory=dict)
    meta: Dict[CanonicalCode, EntryMeta] = field(default_factory=dict)

    def counts(self) -> Dict[int, int]:
        return {v: len(self.levels.get(v, [])) for v in range(self.max_v + 1)}

    def codes(self) -> List[CanonicalCode]:
        return [c for v in sorted(self.levels) for c in self.levels[v]]

    def graphs(self, v: Optional[int] = None) -> List[PlaneMap]:
        if v is None:
            return [self.meta[c].graph for c in self.codes()]
        return [self.meta[c].graph for c in self.levels.get(v, [])]

    def checkpoint_text(self) -> str:
        lines = [f"{CHECKPOINT_MAGIC} max_v={self.max_v} mode={self.chirality.value}"]
        for v in range(self.max_v + 1):
            codes = self.levels.get(v, [])
            lines.append(f"L {v} {len(codes)}")
            lines.extend(c.hex() for c in codes)
        return "\n".join(lines) + "\n"

    def write_checkpoint(self, path) -> None:
        tmp = f"{path}.tmp"
        with open(tmp, "w", encoding="ascii", newline="\n") as fh:
            fh.write(self.checkpoint_text())
        os.replace(tmp, path)

    def check(self) -> None:
        """Assert the store invariants; raise InvariantViolation otherwise."""
        for v, codes in self.levels.items():
            if len(set(codes)) != len(codes):
                raise InvariantViolation(f"duplicate codes on level {v}")
            for c in codes:
                m = self.meta[c]
                if m.graph.vertex_count != v:
                    raise InvariantViolation(f"{c.hex()} filed on the wrong level")
                if m.hyperbolic and m.torus_n is None and not m.predecessors:
                    raise InvariantViolation(f"{c.hex()} has no recorded predecessor")


def read_checkpoint(text: str) -> Tuple[int, Chirality, Dict[int, List[CanonicalCode]]]:
    """Parse checkpoint text; only complete levels are returned."""
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty checkpoint", line=1)
    head = lines[0].split()
    if len(head) != 3 or head[0] != CHECKPOINT_MAGIC:
        raise ParseError("not an atoroidal checkpoint", line=1)
    try:
        max_v = int(head[1].removeprefix("max_v="))
        mode = Chirality(head[2].removeprefix("mode="))
    except ValueError:
        raise ParseError("malformed checkpoint header", line=1) from None
    levels: Dict[int, List[CanonicalCode]] = {}
    i = 1
    while i < len(lines):
        parts = lines[i].split()
        if len(parts) != 3 or parts[0] != "L":
            raise ParseError(f"expected a level header, got {lines[i]!r}", line=i + 1)
        try:
            v, count = int(parts[1]), int(parts[2])
        except ValueError:
            raise ParseError("malformed level header", line=i + 1) from None
        block = lines[i + 1 : i + 1 + count]
        if len(block) < count:
            break  # truncated level: resume recomputes it
        codes = []
        for j, h in enumerate(block):
            try:
                codes.append(CanonicalCode.fromhex(h, mode))
            except ParseError as exc:
                raise ParseError(str(exc), line=i + 2 + j) from None
        levels[v] = codes
        i += 1 + count
    return max_v, mode, levels


# -------------------------------------------------------------- enumeration
def _expand(args) -> List[Tuple[CanonicalCode, SurgeryMove]]:
    g, mode = args
    return [(canonical_code(apply_surgery(g, m), mode), m) for m in legal_surgeries(g)]


def _children(parents: List[PlaneMap], mode: Chirality, threads: int):
    jobs = [(g, mode) for g in parents]
    if threads > 1 and len(jobs) > 8:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(_expand, jobs, chunksize=max(1, len(jobs) // (4 * threads))))
    return [_expand(j) for j in jobs]


def enumerate_atoroidal(
    max_v: int,
    mode: Chirality = Chirality.MOD_REFLECTION,
    *,
    limit: int = DEFAULT_LIMIT,
    verify: bool = True,
    resume: Optional[str] = None,
    checkpoint: Optional[str] = None,
    threads: Optional[int] = None,
) -> EnumerationStore:
    """All atoroidal graphs with at most ``max_v`` vertices.

    ``verify`` re-checks every new graph with :func:`is_atoroidal` and raises
    InvariantViolation on failure.  ``resume`` names checkpoint text whose
    complete levels are trusted as given; ``checkpoint`` is a path rewritten
    after each level.
    """
    if max_v > limit:
        raise LimitExceeded(f"max_v={max_v} exceeds the limit {limit}")
    if max_v < 0:
        raise ValueError("max_v must be non-negative")
    threads = worker_count() if threads is None else threads
    loaded: Dict[int, List[CanonicalCode]] = {}
    if resume is not None:
        _, rmode, loaded = read_checkpoint(resume)
        if rmode is not mode:
            raise ParseError(f"checkpoint was written in mode {rmode.value}")
        loaded = {v: c for v, c in loaded.items() if v <= max_v}
        # keep only the leading run of complete levels
        top = -1
        while top + 1 in loaded:
            top += 1
        loaded = {v: loaded[v] for v in range(top + 1)}

    store = EnumerationStore(max_v=max_v, chirality=mode)
    exc = _exception_codes(mode)
    seeds: Dict[int, List[PlaneMap]] = {}
    torus_of: Dict[CanonicalCode, int] = {}
    for g in initial_objects(max_v):
        seeds.setdefault(g.vertex_count, []).append(g)
        if g.vertex_count >= 6:
            torus_of[canonical_code(g, mode)] = g.vertex_count // 2

    prev: List[CanonicalCode] = []
    for v in range(max_v + 1):
        found: Dict[CanonicalCode, List[Tuple[CanonicalCode, SurgeryMove]]] = {}
        for g in seeds.get(v, []):
            found.setdefault(canonical_code(g, mode), [])
        parents = [c for c in prev if store.meta[c].hyperbolic]
        results = _children([store.meta[c].graph for c in parents], mode, threads)
        for pc, kids in zip(parents, results):
            for kc, move in kids:
                found.setdefault(kc, []).append((pc, move))
                store.meta[pc].children.add(kc)
        trusted = v in loaded
        if trusted:
            if set(loaded[v]) != set(found):
                log.warning("level %d of the checkpoint differs from recomputation", v)
            level = sorted(loaded[v])
        else:
            level = sorted(found)
        for c in level:
            g = from_canonical_code(c)
            kind = exc.get(c)
            meta = EntryMeta(
                graph=g,
                exception=kind,
                torus_n=torus_of.get(c),
                hyperbolic=kind is None,
                predecessors=sorted(found.get(c, [])),
            )
            if verify and not trusted:
                if not is_atoroidal(g):
                    raise InvariantViolation(f"surgery produced a non-atoroidal graph {c.hex()}")
                if (kind is None) != (min_face_size(g) >= 3):
                    raise InvariantViolation(f"hyperbolicity routes disagree on {c.hex()}")
            store.meta[c] = meta
        store.levels[v] = level
        prev = level
        log.info("level %d: %d graphs", v, len(level))
        if checkpoint is not None:
            store.write_checkpoint(checkpoint)
    store.check()
    return store


# ------------------------------------------------------------- descendants
def descendant_set(n: int, max_v: int, store: Optional[EnumerationStore] = None) -> Set[CanonicalCode]:
    """Proper descendants of ``T_n`` under surgery with at most ``max_v`` vertices."""
    if n < 3:
        raise ValueError("n must be at least 3")
    if 2 * n > max_v:
        return set()
    if store is None or store.max_v < max_v:
        store = enumerate_atoroidal(max_v, verify=False)
    root = canonical_code(torus_graph(n), store.chirality)
    out: Set[CanonicalCode] = set()
    stack = [root]
    while stack:
        c = stack.pop()
        for k in store.meta[c].children:
            if k not in out and store.meta[k].graph.vertex_count <= max_v:
                out.add(k)
                stack.append(k)
    return out


# ------------------------------------------------------------ recombination
class RecombinationMode(enum.Enum):
    PRIME_PROJECTIONS = "prime-projections"
    BASIC_POLYHEDRA = "basic-polyhedra"


@dataclass(frozen=True, order=True)
class GluingChoice:
    rotation: int = 0
    reflected: bool = False

    def __post_init__(self):
        if self.rotation not in range(4):
            raise ValueError("rotation must be 0..3")

    @classmethod
    def all(cls) -> List[GluingChoice]:
        return [cls(r, f) for f in (False, True) for r in range(4)]


def forbidden_kinds(mode: RecombinationMode) -> Set[ExceptionKind]:
    kinds = {ExceptionKind.UNKNOT_PROJECTION, ExceptionKind.FIGURE_EIGHT, ExceptionKind.HOPF_PROJECTION}
    if mode is RecombinationMode.BASIC_POLYHEDRA:
        kinds.add(ExceptionKind.TREFOIL_PROJECTION)
    return kinds


def _check_piece(g: PlaneMap, mode: RecombinationMode) -> None:
    if g.vertex_count == 0:
        raise ForbiddenPiece("a piece without vertices cannot be recombined")
    bad = {canonical_code(exception(k)): k for k in forbidden_kinds(mode)}
    if g.is_connected and g.vertex_count <= 3:
        kind = bad.get(canonical_code(g))
        if kind is not None:
            raise ForbiddenPiece(f"{kind.value} is not used in {mode.value} mode")


def recombine(
    g1: PlaneMap,
    v1: int,
    g2: PlaneMap,
    v2: int,
    choice: GluingChoice = GluingChoice(),
    mode: RecombinationMode = RecombinationMode.PRIME_PROJECTIONS,
) -> PlaneMap:
    """Glue the complement of vertex ``v1`` of ``g1`` to that of ``v2`` of ``g2``.

    Strand ``i`` around ``v1`` is joined to strand ``(rotation - i) mod 4``
    around ``v2``; ``reflected`` mirrors ``g2`` first.
    """
    _check_piece(g1, mode)
    _check_piece(g2, mode)
    if not (0 <= v1 < g1.vertex_count and 0 <= v2 < g2.vertex_count):
        raise IllegalMove("vertex out of range")
    if choice.reflected:
        g2 = mirror(g2)
    for g, v in ((g1, v1), (g2, v2)):
        if any(g.mate[4 * v + s] >> 2 == v for s in range(4)):
            raise IllegalMove(f"vertex {v} carries a loop")
    n1 = g1.vertex_count

    def id1(d):
        return d - 4 if (d >> 2) > v1 else d

    def id2(d):
        return 4 * (n1 - 1) + (d - 4 if (d >> 2) > v2 else d)

    mate = [0] * (4 * (n1 + g2.vertex_count - 2))
    for d in range(4 * n1):
        if d >> 2 != v1 and g1.mate[d] >> 2 != v1:
            mate[id1(d)] = id1(g1.mate[d])
    for d in range(4 * g2.vertex_count):
        if d >> 2 != v2 and g2.mate[d] >> 2 != v2:
            mate[id2(d)] = id2(g2.mate[d])
    for i in range(4):
        x = id1(g1.mate[4 * v1 + i])
        y = id2(g2.mate[4 * v2 + (choice.rotation - i) % 4])
        mate[x], mate[y] = y, x
    return build(n1 + g2.vertex_count - 2, mate, free_loops=g1.free_loops + g2.free_loops)


def _pieces(store: EnumerationStore, mode: RecombinationMode) -> List[PlaneMap]:
    banned = forbidden_kinds(mode)
    return [
        store.meta[c].graph
        for c in store.codes()
        if store.meta[c].exception not in banned
    ]


def enumerate_recombinations(
    store: EnumerationStore,
    max_v: int,
    mode: RecombinationMode = RecombinationMode.BASIC_POLYHEDRA,
) -> Set[CanonicalCode]:
    """Closure of the store's usable pieces under recombination, up to ``max_v``.

    Composites are recombined again with further pieces, so composites of
    composites are included.
    """
    pieces = [p for p in _pieces(store, mode) if p.vertex_count <= max_v]
    if not pieces:
        return set()
    chir = store.chirality
    found: Dict[CanonicalCode, PlaneMap] = {canonical_code(p, chir): p for p in pieces}
    by_level: Dict[int, List[PlaneMap]] = {}
    for c, g in found.items():
        by_level.setdefault(g.vertex_count, []).append(g)
    for v in range(max_v + 1):
        for r in sorted(by_level.get(v, []), key=lambda g: canonical_code(g, chir)):
            for p in pieces:
                total = r.vertex_count + p.vertex_count - 2
                if total > max_v:
                    continue
                for v1 in range(r.vertex_count):
                    for v2 in range(p.vertex_count):
                        for choice in GluingChoice.all():
                            try:
                                h = recombine(r, v1, p, v2, choice, RecombinationMode.PRIME_PROJECTIONS)
                            except IllegalMove:
                                continue
                            c = canonical_code(h, chir)
                            if c not in found:
                                found[c] = h
                                by_level.setdefault(total, []).append(h)
    return set(found)


def random_composite(
    pieces: List[PlaneMap],
    rng: random.Random,
    max_v: int,
    parts: int = 2,
) -> PlaneMap:
    """Recombine ``parts`` randomly chosen pieces, staying within ``max_v``."""
    g = rng.choice(pieces)
    for _ in range(parts - 1):
        fits = [p for p in pieces if g.vertex_count + p.vertex_count - 2 <= max_v]
        if not fits:
            break
        p = rng.choice(fits)
        g = recombine(
            g,
            rng.randrange(g.vertex_count),
            p,
            rng.randrange(p.vertex_count),
            GluingChoice(rng.randrange(4), rng.random() < 0.5),
        )
    return g


# ------------------------------------------------------------------ oracle
def _trace_face(mate: List[int], d: int) -> int:
    """Length of the closed face through ``d``, or 0 if it is still open."""
    x, k = d, 0
    while True:
        m = mate[x]
        if m < 0:
            return 0
        x = (m & ~3) | ((m + 1) & 3)
        k += 1
        if x == d:
            return k


def _beaten(mate: List[int], count: int, steps: Tuple[int, ...]) -> bool:
    """Does some other root already give a smaller code than root 0?

    The generator's mate table is itself the breadth-first code from dart 0,
    so a partial table fixes a prefix of that code and of every other root's
    code; comparison stops at the first undetermined word.
    """
    nd = 4 * count
    for step in steps:
        for root in range(nd):
            if step == 1 and root == 0:
                continue
            label = {root >> 2: 0}
            entry = {root >> 2: root}
            order = [root >> 2]
            pos = 0
            i = 0
            verdict = 0
            while i < len(order) and not verdict:
                v = order[i]
                base = entry[v]
                for k in range(4):
                    d = (base & ~3) | ((base + step * k) & 3)
                    m = mate[d]
                    ours = mate[pos] if pos < nd else -1
                    if m < 0 or ours < 0:
                        verdict = 2
                        break
                    w = m >> 2
                    if w not in label:
                        label[w] = len(order)
                        entry[w] = m
                        order.append(w)
                    word = 4 * label[w] + ((step * ((m & 3) - (entry[w] & 3))) & 3)
                    if word != ours:
                        verdict = 1 if word < ours else 2
                        break
                    pos += 1
                i += 1
            if verdict == 1:
                return True
    return False


def iter_sphere_maps(
    nv: int,
    prune: bool = True,
    orderly: bool = True,
    mode: Chirality = Chirality.MOD_REFLECTION,
) -> Iterable[Tuple[int, ...]]:
    """Mate tables of connected 4-valent sphere maps with ``nv`` vertices.

    Without ``orderly`` every map occurs at least once, in some breadth-first
    labelling; with it each map occurs exactly once, as its least code.  With
    ``prune`` set, maps with a face of size one or two are skipped once
    ``nv >= 4``.
    """
    if nv == 0:
        return
    mate = [-1] * (4 * nv)
    target = nv + 2
    small_ok = not prune or nv < 4
    min_open = 1 if small_ok else 3
    steps = (1, -1) if mode is Chirality.MOD_REFLECTION else (1,)

    def rec(d: int, count: int, closed: int, used: int):
        # used: darts lying on closed faces
        while d < 4 * count and mate[d] >= 0:
            d += 1
        if d == 4 * count:
            if count == nv and closed == target:
                yield tuple(mate)
            return
        unmatched = sum(1 for x in range(4 * count) if mate[x] < 0) + 4 * (nv - count)
        if closed + unmatched < target:
            return
        if 4 * nv - used < min_open * (target - closed):
            return
        options = []
        if count < nv:
            options.append((4 * count, count + 1))
        options.extend((x, count) for x in range(d + 1, 4 * count) if mate[x] < 0)
        for x, c2 in options:
            mate[d], mate[x] = x, d
            new = 0
            size = 0
            ok = True
            seen = []
            for y in (d, x):
                k = _trace_face(mate, y)
                if k:
                    # a face through both new darts is counted once
                    orbit = _orbit(mate, y)
                    if orbit in seen:
                        continue
                    seen.append(orbit)
                    if k <= 2 and not small_ok:
                        ok = False
                    new += 1
                    size += k
            if ok and orderly and _beaten(mate, c2, steps):
                ok = False
            if ok:
                yield from rec(d + 1, c2, closed + new, used + size)
            mate[d] = mate[x] = -1

    yield from rec(0, 1, 0, 0)


def _orbit(mate: List[int], d: int) -> frozenset:
    out = [d]
    x = d
    while True:
        m = mate[x]
        x = (m & ~3) | ((m + 1) & 3)
        if x == d:
            return frozenset(out)
        out.append(x)


def compiled_sphere_maps(
    nv: int,
    prune: bool = True,
    orderly: bool = True,
    mode: Chirality = Chirality.MOD_REFLECTION,
) -> List[Tuple[int, ...]]:
    """Same output as :func:`iter_sphere_maps`, computed by the numba kernel."""
    if nv == 0:
        return []
    import numpy as np

    from ._oracle_kernel import search

    small_ok = not prune or nv < 4
    nsteps = 2 if mode is Chirality.MOD_REFLECTION else 1
    cap = 1024
    while True:
        out = np.empty((cap, 4 * nv), dtype=np.int64)
        n = search(nv, small_ok, orderly, nsteps, out)
        if n >= 0:
            return [tuple(int(x) for x in row) for row in out[:n]]
        cap *= 8


def oracle_maps(
    nv: int,
    mode: Chirality = Chirality.MOD_REFLECTION,
    prune: bool = True,
    orderly: bool = True,
    compiled: bool = True,
) -> Dict[CanonicalCode, PlaneMap]:
    """Canonical representatives of all (pruned) connected sphere maps."""
    out: Dict[CanonicalCode, PlaneMap] = {}
    tables = (
        compiled_sphere_maps(nv, prune, orderly, mode)
        if compiled
        else iter_sphere_maps(nv, prune, orderly, mode)
    )
    for mt in tables:
        g = build(nv, list(mt))
        c = canonical_code(g, mode)
        if c not in out:
            out[c] = g
    return out


def oracle_enumerate(max_v: int, mode: Chirality = Chirality.MOD_REFLECTION, prune: bool = True) -> Dict[int, Set[CanonicalCode]]:
    """Atoroidal graphs per vertex count, found without using surgery."""
    if max_v > ORACLE_LIMIT:
        raise LimitExceeded(f"the oracle is capped at {ORACLE_LIMIT} vertices")
    out: Dict[int, Set[CanonicalCode]] = {}
    for v in range(max_v + 1):
        if v == 0:
            g = build(0, [], free_loops=1)
            out[0] = {canonical_code(g, mode)} if is_atoroidal(g) else set()
            continue
        out[v] = {c for c, g in oracle_maps(v, mode, prune).items() if is_atoroidal(g)}
    return out


def verify_predecessors(store: EnumerationStore) -> List[CanonicalCode]:
    """Hyperbolic non-torus graphs lacking an atoroidal predecessor (should be none)."""
    missing = []
    for c in store.codes():
        m = store.meta[c]
        if m.hyperbolic and m.torus_n is None and not atoroidal_predecessors(m.graph):
            missing.append(c)
    return missing
