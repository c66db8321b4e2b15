"""Simple closed curves meeting a 4-valent plane graph, and triviality tests.

A curve is encoded by the cyclic sequence of its crossings with edges and the
faces it runs through between them.  Crossing ``i`` is ``(edge, rank)`` where
``rank`` orders the crossing points on that edge starting from the edge's low
dart; passage ``i`` is the face traversed from crossing ``i`` to crossing
``i + 1``.  A 0-curve is written with no crossings and a single face.

Only *taut* curves are enumerated: a curve that runs from an edge straight
back to the same edge through one face cuts off an empty bigon and can be
isotoped to a curve with fewer crossings.
"""

from __future__ import annotations

import enum
import re
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

from .canon import canonical_code
from .errors import InvariantViolation, UnrealizableCode
from .planemap import ExceptionKind, PlaneMap, exception

CURVE_DEGREES = (0, 2, 4, 6)


# --------------------------------------------------------------------- codes
@dataclass(frozen=True, order=True)
class CurveCode:
    crossings: Tuple[Tuple[int, int], ...]
    passages: Tuple[int, ...]

    def __post_init__(self):
        n = len(self.crossings)
        if n == 0:
            if len(self.passages) != 1:
                raise UnrealizableCode("a 0-curve is given by exactly one face")
        elif len(self.passages) != n or n % 2:
            raise UnrealizableCode("crossings and passages must have the same even length")

    @property
    def n(self) -> int:
        return len(self.crossings)

    def variants(self) -> Iterator[CurveCode]:
        """All rotations and reversals encoding the same unoriented curve."""
        n = self.n
        if n == 0:
            yield self
            return
        c, f = self.crossings, self.passages
        for k in range(n):
            yield CurveCode(c[k:] + c[:k], f[k:] + f[:k])
        rc = tuple(c[-j % n] for j in range(n))
        rf = tuple(f[(-j - 1) % n] for j in range(n))
        for k in range(n):
            yield CurveCode(rc[k:] + rc[:k], rf[k:] + rf[:k])

    def normalized(self) -> CurveCode:
        if self.n == 0:
            return self
        return min(self.variants(), key=CurveCode.sort_key)

    def sort_key(self):
        return tuple((e, r, f) for (e, r), f in zip(self.crossings, self.passages)) or (
            (-1, -1, self.passages[0]),
        )

    def __str__(self) -> str:
        if self.n == 0:
            return f"n=0; f{self.passages[0]}"
        parts = [f"e{e}.{r} f{f}" for (e, r), f in zip(self.crossings, self.passages)]
        return f"n={self.n}; " + " ".join(parts)

    @classmethod
    def parse(cls, text: str) -> CurveCode:
        m = re.fullmatch(r"\s*n=(\d+);(.*)", text)
        if not m:
            raise UnrealizableCode(f"cannot parse curve code {text!r}")
        n = int(m.group(1))
        tokens = m.group(2).split()
        if n == 0:
            if len(tokens) != 1 or not tokens[0].startswith("f"):
                raise UnrealizableCode(f"cannot parse curve code {text!r}")
            return cls((), (int(tokens[0][1:]),))
        if len(tokens) != 2 * n:
            raise UnrealizableCode(f"curve code lists {len(tokens)} tokens, expected {2 * n}")
        crossings, passages = [], []
        for tok_e, tok_f in zip(tokens[::2], tokens[1::2]):
            me = re.fullmatch(r"e(\d+)\.(\d+)", tok_e)
            mf = re.fullmatch(r"f(\d+)", tok_f)
            if not me or not mf:
                raise UnrealizableCode(f"cannot parse curve code {text!r}")
            crossings.append((int(me.group(1)), int(me.group(2))))
            passages.append(int(mf.group(1)))
        return cls(tuple(crossings), tuple(passages))


# ------------------------------------------------------------- side patterns
class SidePattern(enum.Enum):
    EMPTY = "empty"
    SINGLE_ARC = "single-arc"
    TWO_DISJOINT_ARCS = "two-disjoint-arcs"
    TWO_ARCS_CROSSING_AT_VERTEX = "two-arcs-crossing-at-vertex"
    # names used for the same two 4-point disks when arguing about surgery
    TWO_PARALLEL_ARCS = "two-disjoint-arcs"
    VERTEX_NEIGHBORHOOD = "two-arcs-crossing-at-vertex"
    # the trivial disks of a 6-curve in an atoroidal graph
    SIX_TRIVIAL_1 = "six-three-parallel-arcs"
    SIX_TRIVIAL_2 = "six-three-corner-arcs"
    SIX_TRIVIAL_3 = "six-vertex-and-arc"
    SIX_TRIVIAL_4 = "six-two-adjacent-vertices"
    NON_TRIVIAL = "non-trivial"

    @property
    def is_trivial(self) -> bool:
        return self is not SidePattern.NON_TRIVIAL


SMALL_TRIVIAL = frozenset(
    {
        SidePattern.EMPTY,
        SidePattern.SINGLE_ARC,
        SidePattern.TWO_DISJOINT_ARCS,
        SidePattern.TWO_ARCS_CROSSING_AT_VERTEX,
    }
)
SIX_TRIVIAL = frozenset(
    {
        SidePattern.SIX_TRIVIAL_1,
        SidePattern.SIX_TRIVIAL_2,
        SidePattern.SIX_TRIVIAL_3,
        SidePattern.SIX_TRIVIAL_4,
    }
)

# An end of a segment is ("d", dart) at a vertex or ("p", i) at crossing i.
End = Tuple[str, int]


@dataclass(frozen=True)
class SideGraphData:
    """What of the graph lies in one disk bounded by a curve.

    ``segments`` are the pieces of edges inside the disk; ``boundary`` lists
    the crossing indices in the order they occur along the curve.
    """

    n: int
    vertices: Tuple[int, ...]
    segments: Tuple[Tuple[End, End], ...]
    boundary: Tuple[int, ...]
    free_loops: int = 0
    components: int = 0

    @property
    def arcs(self) -> List[Tuple[int, int]]:
        return [(a[1], b[1]) for a, b in self.segments if a[0] == "p" and b[0] == "p"]

    @property
    def is_empty(self) -> bool:
        return not self.vertices and not self.segments and not self.free_loops


# ------------------------------------------------------------------ overlay
@dataclass
class _Overlay:
    """The cell structure of graph plus curve, with sides assigned."""

    m: List[int]
    region_face: List[int] = field(default_factory=list)
    region_side: List[int] = field(default_factory=list)
    left_region: List[int] = field(default_factory=list)  # per passage, side 0
    right_region: List[int] = field(default_factory=list)  # per passage, side 1
    segment_regions: Dict[Tuple[int, int], List[int]] = field(default_factory=dict)
    vertex_side: List[int] = field(default_factory=list)
    segment_side: Dict[Tuple[int, int], int] = field(default_factory=dict)
    taut: bool = True


def _check_crossings(g: PlaneMap, c: CurveCode) -> Tuple[List[int], Dict[Tuple[int, int], int]]:
    m = [0] * g.edge_count
    where: Dict[Tuple[int, int], int] = {}
    for i, (e, r) in enumerate(c.crossings):
        if not 0 <= e < g.edge_count:
            raise UnrealizableCode(f"edge {e} does not exist")
        if (e, r) in where:
            raise UnrealizableCode(f"crossing e{e}.{r} repeated")
        where[(e, r)] = i
        m[e] += 1
    for (e, r) in where:
        if not 0 <= r < m[e]:
            raise UnrealizableCode(f"rank {r} out of range on edge {e}")
    for i, (e, _) in enumerate(c.crossings):
        before, after = c.passages[i - 1], c.passages[i]
        a, b = g.edge_faces(e)
        if {before, after} != {a, b} or before == after:
            raise UnrealizableCode(f"crossing {i} on edge {e} does not join faces {before} and {after}")
    return m, where


def _face_walk(g: PlaneMap, f: int, m: Sequence[int], where):
    """Boundary items of face ``f`` in order: ('s', e, k), ('p', i), ('v', v)."""
    items = []
    for d in g.faces[f]:
        e = g.edge_of[d]
        k = m[e]
        if g.edges[e][0] == d:
            for r in range(k):
                items.append(("s", e, r))
                items.append(("p", where[(e, r)]))
            items.append(("s", e, k))
        else:
            for r in range(k - 1, -1, -1):
                items.append(("s", e, r + 1))
                items.append(("p", where[(e, r)]))
            items.append(("s", e, 0))
        items.append(("v", g.mate[d] >> 2))
    return items


def _overlay(g: PlaneMap, c: CurveCode) -> _Overlay:
    if c.n == 0:
        raise ValueError("_overlay handles curves with crossings only")
    if g.vertex_count == 0 or not g.is_connected:
        raise UnrealizableCode("curves with crossings need a connected map with vertices")
    m, where = _check_crossings(g, c)
    n = c.n
    ov = _Overlay(m=m)
    ov.left_region = [-1] * n
    ov.right_region = [-1] * n
    vertex_regions: Dict[int, List[int]] = {}

    passages_in: Dict[int, List[int]] = {}
    for i, f in enumerate(c.passages):
        passages_in.setdefault(f, []).append(i)

    for f in range(len(g.faces)):
        items = _face_walk(g, f, m, where)
        pts = [it[1] for it in items if it[0] == "p"]
        k2 = len(pts)
        pos = {ci: j for j, ci in enumerate(pts)}
        chords = passages_in.get(f, [])
        if 2 * len(chords) != k2:
            raise UnrealizableCode(f"face {f}: {k2} crossing points but {len(chords)} passages")
        partner = [-1] * k2
        for i in chords:
            a, b = pos.get(i), pos.get((i + 1) % n)
            if a is None or b is None:
                raise UnrealizableCode(f"passage {i} uses a crossing not on face {f}")
            if partner[a] >= 0 or partner[b] >= 0:
                raise UnrealizableCode(f"face {f}: crossing point used twice")
            partner[a], partner[b] = b, a
            if c.crossings[i][0] == c.crossings[(i + 1) % n][0]:
                ov.taut = False
        # chords must nest like brackets
        stack = []
        for j in range(k2):
            if partner[j] > j:
                stack.append(j)
            elif not stack or stack.pop() != partner[j]:
                raise UnrealizableCode(f"face {f}: passages cross each other")

        # gaps: boundary items between consecutive points
        if k2 == 0:
            gaps = [items]
        else:
            first = next(idx for idx, it in enumerate(items) if it[0] == "p")
            rolled = items[first:] + items[:first]
            gaps = []
            for it in rolled:
                if it[0] == "p":
                    gaps.append([])
                else:
                    gaps[-1].append(it)
        gap_region = [-1] * len(gaps)
        for j in range(len(gaps)):
            if gap_region[j] >= 0:
                continue
            rid = len(ov.region_face)
            ov.region_face.append(f)
            x = j
            while gap_region[x] < 0:
                gap_region[x] = rid
                x = partner[(x + 1) % k2] if k2 else x
        for j, gap in enumerate(gaps):
            rid = gap_region[j]
            for it in gap:
                if it[0] == "s":
                    ov.segment_regions.setdefault((it[1], it[2]), []).append(rid)
                else:
                    vertex_regions.setdefault(it[1], []).append(rid)
        for i in chords:
            a, b = pos[i], pos[(i + 1) % n]
            ov.left_region[i] = gap_region[(a - 1) % k2]
            ov.right_region[i] = gap_region[(b - 1) % k2]

    # assign sides: chords fix them, shared segments and corners propagate them
    nreg = len(ov.region_face)
    parent = list(range(nreg))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for regs in list(ov.segment_regions.values()) + list(vertex_regions.values()):
        r0 = find(regs[0])
        for r in regs[1:]:
            parent[find(r)] = r0
    side_of_class: Dict[int, int] = {}
    for i in range(n):
        for rid, s in ((ov.left_region[i], 0), (ov.right_region[i], 1)):
            root = find(rid)
            if side_of_class.setdefault(root, s) != s:
                raise UnrealizableCode("curve code does not bound two disks consistently")
    try:
        ov.region_side = [side_of_class[find(r)] for r in range(nreg)]
    except KeyError:
        raise UnrealizableCode("part of the graph is not reached from the curve") from None
    ov.vertex_side = [ov.region_side[vertex_regions[v][0]] for v in range(g.vertex_count)]
    ov.segment_side = {s: ov.region_side[regs[0]] for s, regs in ov.segment_regions.items()}
    return ov


def _segment_ends(g: PlaneMap, e: int, k: int, m: Sequence[int], where) -> Tuple[End, End]:
    lo, hi = g.edges[e]
    a = ("d", lo) if k == 0 else ("p", where[(e, k - 1)])
    b = ("d", hi) if k == m[e] else ("p", where[(e, k)])
    return a, b


def _side_data(g, c, m, where, vertex_side, segment_side, side) -> SideGraphData:
    verts = tuple(v for v in range(g.vertex_count) if vertex_side[v] == side)
    segs = tuple(
        _segment_ends(g, e, k, m, where)
        for (e, k), s in sorted(segment_side.items())
        if s == side
    )
    return SideGraphData(n=c.n, vertices=verts, segments=segs, boundary=tuple(range(c.n)))


def split_sides(g: PlaneMap, c: CurveCode) -> Tuple[SideGraphData, SideGraphData]:
    """The two disks cut out by ``c``.

    Faces lie to the right of their boundary walk, so the first disk is the
    one to the right of the curve as its code orients it.

    For a 0-curve the first side is what lies inside face ``f`` away from its
    boundary, i.e. everything not in the component of ``f``; the second side
    is that component.
    """
    if c.n == 0:
        return _split_zero(g, c)
    ov = _overlay(g, c)
    m, where = ov.m, {cr: i for i, cr in enumerate(c.crossings)}
    return (
        _side_data(g, c, m, where, ov.vertex_side, ov.segment_side, 0),
        _side_data(g, c, m, where, ov.vertex_side, ov.segment_side, 1),
    )


def _face_component(g: PlaneMap, f: int) -> Optional[int]:
    """Component id of face ``f``; ``None`` plus loop index for free-loop faces."""
    face = g.faces[f]
    if face:
        return g.vertex_components[face[0] >> 2]
    return None


def _split_zero(g: PlaneMap, c: CurveCode):
    f = c.passages[0]
    if not 0 <= f < g.face_count:
        raise UnrealizableCode(f"face {f} does not exist")
    comps = g.vertex_components
    ncomp = max(comps) + 1 if comps else 0
    comp = _face_component(g, f)

    def data(verts, loops, count):
        segs = tuple(
            (("d", lo), ("d", hi)) for lo, hi in g.edges if (lo >> 2) in set(verts)
        )
        return SideGraphData(0, tuple(verts), segs, (), loops, count)

    if comp is None:
        inner = data((), 1, 1)
        outer_verts = tuple(range(g.vertex_count))
        outer = data(outer_verts, g.free_loops - 1, ncomp + g.free_loops - 1)
        return outer, inner
    inner_verts = tuple(v for v in range(g.vertex_count) if comps[v] == comp)
    outer_verts = tuple(v for v in range(g.vertex_count) if comps[v] != comp)
    return (
        data(outer_verts, g.free_loops, ncomp - 1 + g.free_loops),
        data(inner_verts, 0, 1),
    )


# ------------------------------------------------------------ classification
def classify_side(side: SideGraphData, n: Optional[int] = None) -> SidePattern:
    """Match one disk against the elementary trivial patterns."""
    n = side.n if n is None else n
    P = SidePattern
    if side.components > 1 or side.free_loops:
        return P.NON_TRIVIAL
    arcs = side.arcs
    nv = len(side.vertices)
    if nv == 0:
        if len(arcs) != len(side.segments) or 2 * len(arcs) != n:
            return P.NON_TRIVIAL
        if n == 0:
            return P.EMPTY
        if n == 2:
            return P.SINGLE_ARC
        if n == 4:
            return P.TWO_DISJOINT_ARCS
        if n == 6:
            order = {ci: j for j, ci in enumerate(side.boundary)}
            short = sum(1 for a, b in arcs if (order[a] - order[b]) % 6 in (1, 5))
            if short == 3:
                return P.SIX_TRIVIAL_2
            if short == 2:
                return P.SIX_TRIVIAL_1
        return P.NON_TRIVIAL

    # every dart of every side vertex, with what its segment runs to
    to_boundary = 0
    internal = []
    for a, b in side.segments:
        if a[0] == "d" and b[0] == "d":
            internal.append((a[1], b[1]))
        elif a[0] == "d" or b[0] == "d":
            to_boundary += 1
    if nv == 1 and not internal and to_boundary == 4:
        if n == 4 and not arcs:
            return P.TWO_ARCS_CROSSING_AT_VERTEX
        if n == 6 and len(arcs) == 1:
            return P.SIX_TRIVIAL_3
    if nv == 2 and n == 6 and not arcs and to_boundary == 6 and len(internal) == 1:
        d1, d2 = internal[0]
        if d1 >> 2 != d2 >> 2:
            return P.SIX_TRIVIAL_4
    return P.NON_TRIVIAL


def vertex_link(g: PlaneMap, v: int) -> CurveCode:
    """The boundary of a small neighbourhood of vertex ``v``."""
    darts = [4 * v + s for s in range(4)]
    crossings = []
    for d in darts:
        e = g.edge_of[d]
        lo, hi = g.edges[e]
        loop = (lo >> 2) == (hi >> 2)
        crossings.append((e, 1 if (loop and d == hi) else 0))
    # passage s runs from the crossing near dart s to the one near dart s + 1
    passages = [g.face_of[darts[(s + 1) % 4]] for s in range(4)]
    return CurveCode(tuple(crossings), tuple(passages))


def _vertex_links(g: PlaneMap) -> Set[CurveCode]:
    out = set()
    for v in range(g.vertex_count):
        link = vertex_link(g, v)
        try:
            _overlay(g, link)
        except UnrealizableCode:
            link = CurveCode(link.crossings, tuple(g.face_of[4 * v + s] for s in range(4)))
        out.add(link.normalized())
    return out


def has_compression(g: PlaneMap, c: CurveCode) -> bool:
    """Is there an arc meeting the graph at most once, with ends on ``c``,
    splitting the crossings of ``c`` into two groups of at least two?"""
    n = c.n
    if n < 4:
        return False
    ov = _overlay(g, c)
    for side, regions in ((0, ov.left_region), (1, ov.right_region)):
        adjacent = set()
        for seg, regs in ov.segment_regions.items():
            if ov.segment_side[seg] == side and len(regs) == 2:
                adjacent.add((regs[0], regs[1]))
                adjacent.add((regs[1], regs[0]))
        for i in range(n):
            for j in range(i + 1, n):
                inside = j - i
                if inside < 2 or n - inside < 2:
                    continue
                ri, rj = regions[i], regions[j]
                if ri == rj or (ri, rj) in adjacent:
                    return True
    return False


def is_trivial_by_pattern(g: PlaneMap, c: CurveCode) -> bool:
    if c.n == 6:
        return any(classify_side(s) in SIX_TRIVIAL for s in split_sides(g, c))
    return any(classify_side(s) in SMALL_TRIVIAL for s in split_sides(g, c))


def is_trivial_by_compression(g: PlaneMap, c: CurveCode) -> bool:
    if c.n < 4:
        raise ValueError("the compression criterion applies to curves with n >= 4")
    if c.normalized() in _vertex_links(g):
        return True
    return has_compression(g, c)


def is_trivial(g: PlaneMap, c: CurveCode) -> bool:
    """Triviality: by side patterns for ``n <= 4``, by compressions for ``n = 6``."""
    if c.n not in CURVE_DEGREES:
        raise UnrealizableCode(f"curves with {c.n} crossings are not supported")
    if c.n <= 4:
        return is_trivial_by_pattern(g, c)
    return is_trivial_by_compression(g, c)


# -------------------------------------------------------------- enumeration
@lru_cache(maxsize=256)
def _dual_distances(g: PlaneMap) -> Tuple[Tuple[int, ...], ...]:
    nf = len(g.faces)
    nbrs = [set() for _ in range(nf)]
    for lo, hi in g.edges:
        a, b = g.face_of[lo], g.face_of[hi]
        nbrs[a].add(b)
        nbrs[b].add(a)
    dist = []
    for s in range(nf):
        row = [nf + 1] * nf
        row[s] = 0
        q = deque([s])
        while q:
            x = q.popleft()
            for y in nbrs[x]:
                if row[y] > row[x] + 1:
                    row[y] = row[x] + 1
                    q.append(y)
        dist.append(tuple(row))
    return tuple(dist)


def _closed_walks(g: PlaneMap, n: int, taut: bool) -> Iterator[Tuple[List[int], List[int]]]:
    """Closed dual walks whose first edge is their least edge.

    Yields ``(edges, faces)`` where ``faces[i]`` is entered by crossing
    ``edges[i]``; the last face is the starting face.
    """
    dist = _dual_distances(g)
    faces = g.faces
    face_of = g.face_of
    edge_of = g.edge_of
    mate = g.mate
    edges: List[int] = []
    walk: List[int] = []

    def extend(cur: int, start: int, first: int):
        depth = len(edges)
        if depth == n:
            if cur == start and (not taut or edges[-1] != edges[0]):
                yield list(edges), list(walk)
            return
        remaining = n - depth
        for d in faces[cur]:
            e = edge_of[d]
            if e < first:
                continue
            if taut and depth and e == edges[-1]:
                continue
            nxt = face_of[mate[d]]
            if dist[nxt][start] > remaining - 1:
                continue
            edges.append(e)
            walk.append(nxt)
            yield from extend(nxt, start, first)
            edges.pop()
            walk.pop()

    for start in range(len(faces)):
        for d in faces[start]:
            e = edge_of[d]
            nxt = face_of[mate[d]]
            if dist[nxt][start] > n - 1:
                continue
            edges.append(e)
            walk.append(nxt)
            yield from extend(nxt, start, e)
            edges.pop()
            walk.pop()


def _rank_assignments(edges: List[int]) -> Iterator[List[int]]:
    from itertools import permutations, product

    occ: Dict[int, List[int]] = {}
    for idx, e in enumerate(edges):
        occ.setdefault(e, []).append(idx)
    groups = list(occ.values())
    ranks = [0] * len(edges)
    for choice in product(*(permutations(range(len(gr))) for gr in groups)):
        for gr, perm in zip(groups, choice):
            for idx, r in zip(gr, perm):
                ranks[idx] = r
        yield list(ranks)


def _is_simple(g: PlaneMap, c: CurveCode, taut: bool) -> bool:
    n = c.n
    m = [0] * g.edge_count
    where = {}
    for i, (e, r) in enumerate(c.crossings):
        m[e] += 1
        where[(e, r)] = i
    passages_in: Dict[int, List[int]] = {}
    for i, f in enumerate(c.passages):
        passages_in.setdefault(f, []).append(i)
    for f, chords in passages_in.items():
        if taut:
            for i in chords:
                if c.crossings[i][0] == c.crossings[(i + 1) % n][0]:
                    return False
        items = _face_walk(g, f, m, where)
        pts = [it[1] for it in items if it[0] == "p"]
        pos = {ci: j for j, ci in enumerate(pts)}
        partner = [-1] * len(pts)
        for i in chords:
            a, b = pos[i], pos[(i + 1) % n]
            partner[a], partner[b] = b, a
        stack = []
        for j in range(len(pts)):
            if partner[j] > j:
                stack.append(j)
            elif not stack or stack.pop() != partner[j]:
                return False
    return True


def iter_curves(g: PlaneMap, n: int, taut: bool = True) -> Iterator[CurveCode]:
    """Yield normalized codes of simple ``n``-curves, each class once."""
    if n not in CURVE_DEGREES:
        raise ValueError(f"n must be one of {CURVE_DEGREES}")
    if n == 0:
        for f in range(g.face_count):
            yield CurveCode((), (f,))
        return
    if g.vertex_count == 0:
        # a bare circle: every curve meeting it has arcs only on one side
        return
    if not g.is_connected:
        raise ValueError("curves with crossings are only enumerated on connected maps")
    seen: Set[CurveCode] = set()
    for edges, faces in _closed_walks(g, n, taut):
        for ranks in _rank_assignments(edges):
            code = CurveCode(tuple(zip(edges, ranks)), tuple(faces))
            if not _is_simple(g, code, taut):
                continue
            key = code.normalized()
            if key not in seen:
                seen.add(key)
                yield key


def enumerate_curves(g: PlaneMap, n: int, taut: bool = True) -> List[CurveCode]:
    """All isotopy classes of (by default taut) simple ``n``-curves, sorted."""
    return sorted(iter_curves(g, n, taut), key=CurveCode.sort_key)


# ------------------------------------------------------------- predicates
def _parity_sides(g: PlaneMap, c: CurveCode) -> Tuple[SideGraphData, SideGraphData]:
    """Side data from crossing parities alone (sides in arbitrary order).

    Cheaper than :func:`split_sides`; assumes ``c`` is realizable.
    """
    m = [0] * g.edge_count
    where = {}
    for i, (e, r) in enumerate(c.crossings):
        m[e] += 1
        where[(e, r)] = i
    side = [-1] * g.vertex_count
    side[0] = 0
    stack = [0]
    while stack:
        v = stack.pop()
        for s in range(4):
            d = 4 * v + s
            w = g.mate[d] >> 2
            sw = side[v] ^ (m[g.edge_of[d]] & 1)
            if side[w] < 0:
                side[w] = sw
                stack.append(w)
    seg_side = {}
    for e, (lo, hi) in enumerate(g.edges):
        base = side[lo >> 2]
        for k in range(m[e] + 1):
            seg_side[(e, k)] = base ^ (k & 1)
    return (
        _side_data(g, c, m, where, side, seg_side, 0),
        _side_data(g, c, m, where, side, seg_side, 1),
    )


def _fast_trivial(g: PlaneMap, c: CurveCode) -> bool:
    return any(classify_side(s) in SMALL_TRIVIAL for s in _parity_sides(g, c))


def _first_nontrivial(g: PlaneMap, n: int) -> Optional[CurveCode]:
    for c in iter_curves(g, n):
        if not _fast_trivial(g, c):
            return c
    return None


def is_irreducible(g: PlaneMap) -> bool:
    if not g.is_connected:
        return False
    if g.vertex_count == 0:
        return True
    return _first_nontrivial(g, 2) is None


def is_atoroidal(g: PlaneMap) -> bool:
    if not is_irreducible(g):
        return False
    if g.vertex_count == 0:
        return True
    return _first_nontrivial(g, 4) is None


def _is_exception(g: PlaneMap) -> bool:
    if not g.is_connected or g.vertex_count > 3:
        return False
    code = canonical_code(g)
    return any(canonical_code(exception(k)) == code for k in ExceptionKind)


def is_hyperbolic(g: PlaneMap) -> bool:
    """Atoroidal and not one of the four small exceptions.

    Also checks this against "atoroidal with no face smaller than a
    triangle" and raises InvariantViolation if the two disagree.
    """
    if not is_atoroidal(g):
        return False
    by_name = not _is_exception(g)
    by_faces = g.vertex_count > 0 and min(len(f) for f in g.faces) >= 3
    if by_name != by_faces:
        raise InvariantViolation("hyperbolicity by exception list and by face sizes disagree")
    return by_name


def find_nontrivial_curve(g: PlaneMap, n_max: int = 4) -> Optional[Tuple[int, CurveCode]]:
    """A non-trivial curve of least degree, least code among those; else None."""
    if n_max not in (0, 2, 4):
        raise ValueError("n_max must be 0, 2 or 4")
    if not g.is_connected:
        return 0, CurveCode((), (0,))
    if g.vertex_count == 0:
        return None
    for n in (2, 4):
        if n > n_max:
            break
        bad = [c for c in enumerate_curves(g, n) if not _fast_trivial(g, c)]
        if bad:
            return n, bad[0]
    return None


def nontrivial_curves(g: PlaneMap, n: int) -> List[CurveCode]:
    return [c for c in enumerate_curves(g, n) if not is_trivial(g, c)]
