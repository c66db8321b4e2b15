"""Pinching two edges of a face together, and the inverse split at a vertex.

Let a face run through darts ``a, b, c`` with ``b`` on edge ``e`` and ``a``,
``c`` on the neighbouring edges ``e1``, ``e2``.  The surgery inserts a new
vertex in the middle of ``e1`` and of ``e2`` at once, so the face loses ``e``'s
neighbourhood to a new triangle formed by ``e`` and the new vertex.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .curves import is_atoroidal
from .errors import IllegalMove, NotSimpleVertex, ParseError
from .planemap import PlaneMap, build, rot


@dataclass(frozen=True, order=True)
class SurgeryMove:
    face: int
    e: int
    e1: int
    e2: int

    def __str__(self) -> str:
        return f"surgery f{self.face} e{self.e} {self.e1} {self.e2}"

    @classmethod
    def parse(cls, text: str) -> SurgeryMove:
        m = re.fullmatch(r"\s*surgery\s+f(\d+)\s+e(\d+)\s+e?(\d+)\s+e?(\d+)\s*", text)
        if not m:
            raise ParseError(f"cannot parse surgery move {text!r}")
        return cls(*(int(x) for x in m.groups()))


@dataclass(frozen=True, order=True)
class SplitMove:
    vertex: int

    def __str__(self) -> str:
        return f"split v{self.vertex}"

    @classmethod
    def parse(cls, text: str) -> SplitMove:
        m = re.fullmatch(r"\s*split\s+v(\d+)\s*", text)
        if not m:
            raise ParseError(f"cannot parse split move {text!r}")
        return cls(int(m.group(1)))


def legal_surgeries(g: PlaneMap) -> List[SurgeryMove]:
    """Every move on a face with more than three sides, both edge orders."""
    moves = []
    for f, darts in enumerate(g.faces):
        k = len(darts)
        if k <= 3:
            continue
        for i in range(k):
            e = g.edge_of[darts[i]]
            e1 = g.edge_of[darts[i - 1]]
            e2 = g.edge_of[darts[(i + 1) % k]]
            if len({e, e1, e2}) < 3:
                continue
            moves.append(SurgeryMove(f, e, e1, e2))
            moves.append(SurgeryMove(f, e, e2, e1))
    return sorted(set(moves))


def _locate(g: PlaneMap, m: SurgeryMove) -> Tuple[int, int, int]:
    if not 0 <= m.face < g.face_count:
        raise IllegalMove(f"face {m.face} does not exist")
    darts = g.faces[m.face]
    k = len(darts)
    if k <= 3:
        raise IllegalMove(f"face {m.face} has only {k} sides")
    if m.e1 == m.e2:
        raise IllegalMove("the two pinched edges must differ")
    for i in range(k):
        a, b, c = darts[i - 1], darts[i], darts[(i + 1) % k]
        if g.edge_of[b] != m.e:
            continue
        if {g.edge_of[a], g.edge_of[c]} == {m.e1, m.e2}:
            return a, b, c
    raise IllegalMove(f"{m} does not describe edges around face {m.face}")


def apply_surgery(g: PlaneMap, m: SurgeryMove) -> PlaneMap:
    a, _, c = _locate(g, m)
    nv = g.vertex_count
    mate = list(g.mate) + [0, 0, 0, 0]
    v = 4 * nv
    ma, mc = g.mate[a], g.mate[c]
    for x, y in ((v, c), (v + 1, ma), (v + 2, a), (v + 3, mc)):
        mate[x], mate[y] = y, x
    return build(nv + 1, mate, free_loops=g.free_loops)


def created_vertex(g: PlaneMap) -> int:
    """Vertex added by :func:`apply_surgery` (always the last one)."""
    return g.vertex_count - 1


def _triangles_at(g: PlaneMap, v: int) -> List[Tuple[int, Tuple[int, int, int]]]:
    """Triangles through ``v`` as (face, (t0, t1, t2)) with ``t0`` leaving ``v``."""
    out = []
    for s in range(4):
        d = 4 * v + s
        f = g.face_of[d]
        face = g.faces[f]
        if len(face) != 3:
            continue
        i = face.index(d)
        out.append((f, (face[i], face[(i + 1) % 3], face[(i + 2) % 3])))
    return out


def _simple_triangle(g: PlaneMap, v: int) -> Optional[Tuple[int, Tuple[int, int, int]]]:
    for s in range(4):
        if g.mate[4 * v + s] >> 2 == v:
            return None
    for f, (t0, t1, t2) in _triangles_at(g, v):
        if len(g.faces[g.face_of[g.mate[t0]]]) > 3 and len(g.faces[g.face_of[g.mate[t2]]]) > 3:
            return f, (t0, t1, t2)
    return None


def simple_vertices(g: PlaneMap) -> List[Tuple[int, int]]:
    """(vertex, triangle face) for every simple vertex and every witnessing triangle."""
    out = []
    for v in range(g.vertex_count):
        if any(g.mate[4 * v + s] >> 2 == v for s in range(4)):
            continue
        for f, (t0, _, t2) in _triangles_at(g, v):
            if len(g.faces[g.face_of[g.mate[t0]]]) > 3 and len(g.faces[g.face_of[g.mate[t2]]]) > 3:
                out.append((v, f))
    return out


def is_simple_vertex(g: PlaneMap, v: int) -> bool:
    return _simple_triangle(g, v) is not None


def _delete_vertex(g: PlaneMap, v: int, mate: List[int]) -> Tuple[List[int], callable]:
    def renumber(d: int) -> int:
        w = d >> 2
        return d - 4 if w > v else d

    out = []
    for d in range(4 * g.vertex_count):
        if d >> 2 == v:
            continue
        out.append(renumber(mate[d]))
    return out, renumber


def split_at(g: PlaneMap, s: SplitMove) -> PlaneMap:
    return _split(g, s)[0]


def _split(g: PlaneMap, s: SplitMove) -> Tuple[PlaneMap, SurgeryMove]:
    v = s.vertex
    if not 0 <= v < g.vertex_count:
        raise NotSimpleVertex(f"vertex {v} does not exist")
    found = _simple_triangle(g, v)
    if found is None:
        raise NotSimpleVertex(f"vertex {v} is not simple")
    _, (t0, t1, t2) = found
    v0 = g.mate[t2]
    v1 = rot(v0)
    v2 = rot(v1)
    v3 = rot(v2)
    mate = list(g.mate)
    x, y = g.mate[v2], g.mate[v1]
    mate[x], mate[y] = y, x
    x, y = g.mate[v0], g.mate[v3]
    mate[x], mate[y] = y, x
    body, renumber = _delete_vertex(g, v, mate)
    h = build(g.vertex_count - 1, body, free_loops=g.free_loops)
    # the pinch that undoes this split
    a, b, c = renumber(g.mate[v2]), renumber(t1), renumber(t2)
    move = SurgeryMove(h.face_of[b], h.edge_of[b], h.edge_of[a], h.edge_of[c])
    return h, move


def inverse_move(g: PlaneMap, s: SplitMove) -> SurgeryMove:
    """The surgery on ``split_at(g, s)`` that gives back ``g``."""
    return _split(g, s)[1]


def atoroidal_predecessors(g: PlaneMap) -> List[Tuple[SplitMove, PlaneMap]]:
    out = []
    for v in sorted({v for v, _ in simple_vertices(g)}):
        h = split_at(g, SplitMove(v))
        if is_atoroidal(h):
            out.append((SplitMove(v), h))
    return out
