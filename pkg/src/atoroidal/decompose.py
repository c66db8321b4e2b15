"""Cutting a projection along non-trivial curves until only atoroidal pieces remain.

Cutting along a curve collapses the far disk of each side to a point: with
two crossings the two strand ends are joined into one edge, with four they
meet at a new vertex.  Each cut keeps a :class:`Gluing` record so the pieces
can be put back together exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple, Union

from .curves import CurveCode, find_nontrivial_curve, is_atoroidal, is_trivial, split_sides
from .errors import BadDegree, InconsistentGluing, ParseError, TrivialCurve
from .planemap import ExceptionKind, PlaneMap, build, exception, induced, parse_planar_code, to_planar_code


@dataclass(frozen=True)
class Gluing:
    """How two pieces reassemble into the graph they were cut from.

    ``side_vertices[s][k]`` is the original id of vertex ``k`` of piece ``s``.
    ``ports[s][i]`` is the piece dart carrying the strand through crossing
    point ``i``: a dart of the new vertex when ``n == 4``, and the two ends of
    the joined edge when ``n == 2``.
    """

    n: int
    vertex_count: int
    side_vertices: Tuple[Tuple[int, ...], Tuple[int, ...]]
    ports: Tuple[Tuple[int, ...], Tuple[int, ...]] = ((), ())
    free_loops: Tuple[int, int] = (0, 0)

    def __str__(self) -> str:
        sv = ";".join(",".join(map(str, s)) for s in self.side_vertices)
        pt = ";".join(",".join(map(str, p)) for p in self.ports)
        fl = ",".join(map(str, self.free_loops))
        return f"V={self.vertex_count} sides={sv} ports={pt} loops={fl}"

    @classmethod
    def parse(cls, n: int, text: str) -> Gluing:
        fields = dict(tok.split("=", 1) for tok in text.split())
        try:
            def pair(s):
                a, b = s.split(";")
                return tuple(tuple(int(x) for x in part.split(",") if x) for part in (a, b))

            loops = tuple(int(x) for x in fields["loops"].split(","))
            return cls(n, int(fields["V"]), pair(fields["sides"]), pair(fields["ports"]), loops)
        except (KeyError, ValueError):
            raise ParseError(f"malformed gluing record {text!r}") from None


# ---------------------------------------------------------------- cutting
def _side_ends(side) -> Dict[int, Tuple[str, int]]:
    """For each crossing point, what the side's segment through it runs to."""
    ends: Dict[int, Tuple[str, int]] = {}
    for a, b in side.segments:
        if a[0] == "p":
            ends[a[1]] = b
        if b[0] == "p":
            ends[b[1]] = a
    return ends


def _port_slot(side_index: int, i: int) -> int:
    # faces lie to the right of their walk, so the first side sees the
    # crossings around the new vertex in curve order and the second reversed
    return i % 4 if side_index == 0 else (-i) % 4


def _cut_zero(g: PlaneMap, c: CurveCode):
    if g.is_connected:
        raise TrivialCurve("a 0-curve in a connected map is trivial")
    outer, inner = split_sides(g, c)
    pieces = []
    for side in (outer, inner):
        verts = side.vertices
        piece = induced(g, verts)
        pieces.append(PlaneMap(piece.vertex_count, piece.mate, side.free_loops))
    if (pieces[0].vertex_count == 0 and pieces[0].free_loops == 0) or (
        pieces[1].vertex_count == 0 and pieces[1].free_loops == 0
    ):
        raise TrivialCurve("the curve has an empty side")
    rec = Gluing(0, g.vertex_count, (outer.vertices, inner.vertices), ((), ()), (outer.free_loops, inner.free_loops))
    return pieces[0], pieces[1], rec


def cut_along(g: PlaneMap, c: CurveCode) -> Tuple[PlaneMap, PlaneMap, Gluing]:
    """Split ``g`` along the non-trivial curve ``c`` into two pieces."""
    if c.n not in (0, 2, 4):
        raise BadDegree(f"cannot cut along a curve with {c.n} crossings")
    if c.n == 0:
        return _cut_zero(g, c)
    if is_trivial(g, c):
        raise TrivialCurve(f"{c} is trivial")
    n = c.n
    pieces = []
    verts_out = []
    ports_out = []
    for s, side in enumerate(split_sides(g, c)):
        verts = side.vertices
        index = {v: k for k, v in enumerate(verts)}
        nv = len(verts) + (1 if n == 4 else 0)
        mate = [-1] * (4 * nv)

        def local(d):
            return 4 * index[d >> 2] + (d & 3)

        for a, b in side.segments:
            if a[0] == "d" and b[0] == "d":
                mate[local(a[1])], mate[local(b[1])] = local(b[1]), local(a[1])
        ends = _side_ends(side)
        if n == 4:
            w = 4 * len(verts)
            ports = tuple(w + _port_slot(s, i) for i in range(4))
            for i in range(4):
                kind, val = ends[i]
                x = local(val) if kind == "d" else ports[val]
                mate[ports[i]], mate[x] = x, ports[i]
        else:
            (k0, a0), (k1, a1) = ends[0], ends[1]
            if k0 != "d" or k1 != "d":
                raise TrivialCurve(f"{c} has a side holding a single arc")
            ports = (local(a0), local(a1))
            mate[ports[0]], mate[ports[1]] = ports[1], ports[0]
        pieces.append(build(nv, mate))
        verts_out.append(verts)
        ports_out.append(ports)
    rec = Gluing(n, g.vertex_count, tuple(verts_out), tuple(ports_out))
    return pieces[0], pieces[1], rec


def glue(p0: PlaneMap, p1: PlaneMap, rec: Gluing) -> PlaneMap:
    """Inverse of :func:`cut_along`."""
    n = rec.n
    pieces = (p0, p1)
    extra = 1 if n == 4 else 0
    covered = sorted(rec.side_vertices[0] + rec.side_vertices[1])
    if covered != list(range(rec.vertex_count)):
        raise InconsistentGluing("side vertex lists do not partition the vertices")
    for s in (0, 1):
        if pieces[s].vertex_count != len(rec.side_vertices[s]) + extra:
            raise InconsistentGluing(f"piece {s} has the wrong number of vertices")
        if n and len(rec.ports[s]) != n:
            raise InconsistentGluing(f"piece {s} lists {len(rec.ports[s])} ports, expected {n}")
    mate = [-1] * (4 * rec.vertex_count)

    def orig(s, x):
        return 4 * rec.side_vertices[s][x >> 2] + (x & 3)

    ends: List[Dict[int, Tuple[str, int]]] = [{}, {}]
    skip: List[set] = [set(), set()]
    for s, p in enumerate(pieces):
        ports = rec.ports[s]
        if n == 4:
            w = len(rec.side_vertices[s])
            if any(q >> 2 != w for q in ports) or len(set(ports)) != 4:
                raise InconsistentGluing("ports must be the four darts of the added vertex")
            point_of = {q: i for i, q in enumerate(ports)}
            for i, q in enumerate(ports):
                m = p.mate[q]
                ends[s][i] = ("p", point_of[m]) if m >> 2 == w else ("d", orig(s, m))
            skip[s] = {d for d in range(4 * w) if p.mate[d] >> 2 == w}
        elif n == 2:
            a, b = ports
            if not (0 <= a < p.dart_count and 0 <= b < p.dart_count) or p.mate[a] != b:
                raise InconsistentGluing("the two ports of a 2-cut must be one edge")
            ends[s] = {0: ("d", orig(s, a)), 1: ("d", orig(s, b))}
            skip[s] = {a, b}
        limit = 4 * len(rec.side_vertices[s])
        for x in range(limit):
            if x in skip[s]:
                continue
            mate[orig(s, x)] = orig(s, p.mate[x])
    for s in (0, 1):
        for i in range(n):
            kind, x = ends[s][i]
            if kind != "d":
                continue
            side, pt = 1 - s, i
            for _ in range(n + 1):
                kind2, val = ends[side][pt]
                if kind2 == "d":
                    mate[x] = val
                    break
                pt, side = val, 1 - side
            else:
                raise InconsistentGluing("strands through the cut never reach a vertex")
    if any(m < 0 for m in mate):
        raise InconsistentGluing("gluing leaves darts unmatched")
    loops = p0.free_loops + p1.free_loops
    try:
        return build(rec.vertex_count, mate, free_loops=loops)
    except ValueError as exc:
        raise InconsistentGluing(f"glued map is invalid: {exc}") from exc


# ------------------------------------------------------------------ trees
@dataclass(frozen=True)
class Leaf:
    graph: PlaneMap

    @property
    def is_atoroidal(self) -> bool:
        return is_atoroidal(self.graph)


@dataclass(frozen=True)
class Cut:
    curve: CurveCode
    n: int
    gluing: Gluing
    left: DecompositionTree
    right: DecompositionTree


DecompositionTree = Union[Leaf, Cut]


def decompose(g: PlaneMap, _depth: int = 0) -> DecompositionTree:
    """Cut along least non-trivial curves until every piece is atoroidal."""
    found = find_nontrivial_curve(g, 4)
    if found is None:
        return Leaf(g)
    n, c = found
    a, b, rec = cut_along(g, c)
    return Cut(c, n, rec, decompose(a, _depth + 1), decompose(b, _depth + 1))


def reassemble(t: DecompositionTree) -> PlaneMap:
    if isinstance(t, Leaf):
        return t.graph
    return glue(reassemble(t.left), reassemble(t.right), t.gluing)


def leaves(t: DecompositionTree) -> List[PlaneMap]:
    if isinstance(t, Leaf):
        return [t.graph]
    return leaves(t.left) + leaves(t.right)


def depth(t: DecompositionTree) -> int:
    if isinstance(t, Leaf):
        return 0
    return 1 + max(depth(t.left), depth(t.right))


def tree_to_text(t: DecompositionTree, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(t, Leaf):
        body = "\n".join(pad + "  " + line for line in to_planar_code(t.graph).splitlines())
        return f"{pad}leaf\n{body}"
    head = f"{pad}cut {t.curve} | {t.gluing}"
    return "\n".join([head, tree_to_text(t.left, indent + 1), tree_to_text(t.right, indent + 1)])


def tree_from_text(text: str) -> DecompositionTree:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    pos = 0

    def level(line):
        return (len(line) - len(line.lstrip(" "))) // 2

    def parse_node():
        nonlocal pos
        if pos >= len(lines):
            raise ParseError("tree ends early", line=pos + 1)
        line = lines[pos]
        lv = level(line)
        body = line.strip()
        pos += 1
        if body == "leaf":
            code = []
            while pos < len(lines) and level(lines[pos]) > lv and not lines[pos].strip().startswith(("leaf", "cut ")):
                code.append(lines[pos].strip())
                pos += 1
            try:
                return Leaf(parse_planar_code("\n".join(code)))
            except ParseError as exc:
                raise ParseError(f"bad leaf: {exc}", line=pos) from None
        if body.startswith("cut "):
            try:
                curve_text, glue_text = body[4:].split(" | ")
                curve = CurveCode.parse(curve_text)
                rec = Gluing.parse(curve.n, glue_text)
            except ValueError as exc:
                raise ParseError(str(exc), line=pos) from None
            left = parse_node()
            right = parse_node()
            return Cut(curve, curve.n, rec, left, right)
        raise ParseError(f"unexpected line {body!r}", line=pos)

    tree = parse_node()
    if pos != len(lines):
        raise ParseError("trailing text after tree", line=pos + 1)
    return tree


# -------------------------------------------------------------- builders
def connected_sum(g1: PlaneMap, d1: int, g2: PlaneMap, d2: int) -> PlaneMap:
    """Cut the edge of dart ``d1`` in ``g1`` and of ``d2`` in ``g2`` and reconnect across."""
    n1 = g1.vertex_count
    mate = list(g1.mate) + [m + 4 * n1 for m in g2.mate]
    a, b = d1, g1.mate[d1]
    c, d = d2 + 4 * n1, g2.mate[d2] + 4 * n1
    mate[a], mate[d] = d, a
    mate[b], mate[c] = c, b
    return build(n1 + g2.vertex_count, mate, free_loops=g1.free_loops + g2.free_loops)


def granny(d1: int = 0, d2: int = 0) -> PlaneMap:
    """Connected sum of two trefoil projections."""
    t = exception(ExceptionKind.TREFOIL_PROJECTION)
    return connected_sum(t, d1, t, d2)
