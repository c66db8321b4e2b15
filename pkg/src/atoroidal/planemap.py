"""Dart-based combinatorial maps of 4-valent graphs on the sphere.

Darts are numbered ``4 * vertex + slot``.  Slot ``s + 1`` (mod 4) is the next
dart counterclockwise around the vertex, so the rotation system is implicit
and only the edge involution ``mate`` has to be stored.  Faces are the orbits
of ``d -> rot(mate(d))``.

A vertexless circle (the unknot projection) has no darts at all and is
counted in ``free_loops``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from .errors import (
    BadRotationOrbit,
    Disconnected,
    NotInvolution,
    NotSpherical,
    ParseError,
    PlaneMapError,
)

FaceVector = Dict[int, int]


def vertex_of(d: int) -> int:
    return d >> 2


def rot(d: int) -> int:
    return (d & ~3) | ((d + 1) & 3)


def rot_inv(d: int) -> int:
    return (d & ~3) | ((d + 3) & 3)


@dataclass(frozen=True, eq=True)
class PlaneMap:
    """A 4-valent graph embedded in the sphere.

    Use :func:`build` (or one of the constructors below) rather than calling
    the class directly; the constructor does not validate.
    """

    vertex_count: int
    mate: Tuple[int, ...]
    free_loops: int = 0

    # ------------------------------------------------------------------ darts
    @property
    def dart_count(self) -> int:
        return 4 * self.vertex_count

    def face_next(self, d: int) -> int:
        return rot(self.mate[d])

    # ------------------------------------------------------------------ faces
    @cached_property
    def _face_data(self):
        seen = [-1] * self.dart_count
        faces: List[Tuple[int, ...]] = []
        for start in range(self.dart_count):
            if seen[start] >= 0:
                continue
            cycle = []
            d = start
            while seen[d] < 0:
                seen[d] = len(faces)
                cycle.append(d)
                d = rot(self.mate[d])
            faces.append(tuple(cycle))
        faces.extend(() for _ in range(2 * self.free_loops))
        return tuple(faces), tuple(seen)

    @property
    def faces(self) -> Tuple[Tuple[int, ...], ...]:
        return self._face_data[0]

    @property
    def face_of(self) -> Tuple[int, ...]:
        return self._face_data[1]

    @property
    def face_count(self) -> int:
        return len(self.faces)

    # ------------------------------------------------------------------ edges
    @cached_property
    def _edge_data(self):
        edge_of = [-1] * self.dart_count
        edges = []
        for d in range(self.dart_count):
            if edge_of[d] < 0:
                m = self.mate[d]
                edge_of[d] = edge_of[m] = len(edges)
                edges.append((d, m))
        return tuple(edges), tuple(edge_of)

    @property
    def edges(self) -> Tuple[Tuple[int, int], ...]:
        """Edges as ``(low dart, high dart)`` pairs, indexed by edge id."""
        return self._edge_data[0]

    @property
    def edge_of(self) -> Tuple[int, ...]:
        return self._edge_data[1]

    @property
    def edge_count(self) -> int:
        return 2 * self.vertex_count

    def edge_faces(self, e: int) -> Tuple[int, int]:
        lo, hi = self.edges[e]
        return self.face_of[lo], self.face_of[hi]

    # ------------------------------------------------------------- structure
    @cached_property
    def vertex_components(self) -> Tuple[int, ...]:
        """Component index of every vertex (components ordered by min vertex)."""
        comp = [-1] * self.vertex_count
        count = 0
        for s in range(self.vertex_count):
            if comp[s] >= 0:
                continue
            comp[s] = count
            stack = [s]
            while stack:
                v = stack.pop()
                for slot in range(4):
                    w = self.mate[4 * v + slot] >> 2
                    if comp[w] < 0:
                        comp[w] = count
                        stack.append(w)
            count += 1
        return tuple(comp)

    @property
    def component_count(self) -> int:
        """Connected components, free loops included."""
        comps = self.vertex_components
        return (max(comps) + 1 if comps else 0) + self.free_loops

    @property
    def is_connected(self) -> bool:
        return self.component_count == 1

    def face_sizes(self) -> List[int]:
        return [len(f) for f in self.faces]

    def __repr__(self) -> str:
        return f"PlaneMap(V={self.vertex_count}, free_loops={self.free_loops})"

    def __str__(self) -> str:
        return to_planar_code(self)


# ---------------------------------------------------------------- building
def _check_spherical(g: PlaneMap) -> None:
    comps = g.vertex_components
    if not comps:
        return
    n = max(comps) + 1
    verts = [0] * n
    faces = [0] * n
    for c in comps:
        verts[c] += 1
    for f in g.faces:
        if f:
            faces[comps[f[0] >> 2]] += 1
    for c in range(n):
        # V - E + F with E = 2V
        if faces[c] - verts[c] != 2:
            raise NotSpherical(
                f"component {c}: V={verts[c]}, E={2 * verts[c]}, F={faces[c]}; "
                "Euler characteristic is not 2"
            )


def build(
    vertex_count: int,
    mate_table: Sequence[int],
    rotation_table: Optional[Sequence[int]] = None,
    free_loops: int = 0,
    require_connected: bool = False,
) -> PlaneMap:
    """Validate dart tables and return a :class:`PlaneMap`.

    ``rotation_table`` may be omitted when darts already follow the
    ``4 * vertex + slot`` counterclockwise convention.  When given, each block
    ``4v .. 4v+3`` must be a single 4-cycle of it; darts are then renumbered
    so that slots follow the rotation starting from ``4v``.
    """
    if vertex_count < 0 or free_loops < 0:
        raise PlaneMapError("vertex_count and free_loops must be non-negative")
    n = 4 * vertex_count
    if len(mate_table) != n:
        raise PlaneMapError(f"mate table has {len(mate_table)} entries, expected {n}")
    mate = [int(m) for m in mate_table]
    for d, m in enumerate(mate):
        if not 0 <= m < n or m == d or mate[m] != d:
            raise NotInvolution(f"mate is not a fixed-point-free involution at dart {d}")

    if rotation_table is not None:
        if len(rotation_table) != n:
            raise PlaneMapError("rotation table has wrong length")
        relabel = [0] * n
        for v in range(vertex_count):
            d = 4 * v
            orbit = set()
            for slot in range(4):
                if d >> 2 != v or d in orbit:
                    raise BadRotationOrbit(f"rotation orbit at vertex {v} is not a 4-cycle")
                orbit.add(d)
                relabel[d] = 4 * v + slot
                d = int(rotation_table[d])
            if d != 4 * v:
                raise BadRotationOrbit(f"rotation orbit at vertex {v} is not a 4-cycle")
        new_mate = [0] * n
        for d in range(n):
            new_mate[relabel[d]] = relabel[mate[d]]
        mate = new_mate

    g = PlaneMap(vertex_count, tuple(mate), free_loops)
    _check_spherical(g)
    if require_connected and not g.is_connected:
        raise Disconnected("map is not connected")
    return g


def from_rotation_lists(
    rotations: Sequence[Sequence[Hashable]], free_loops: int = 0, **kwargs
) -> PlaneMap:
    """Build a map from counterclockwise edge-label lists, one per vertex.

    Every label must occur exactly twice overall; a label repeated at one
    vertex is a loop.
    """
    where: Dict[Hashable, List[int]] = {}
    for v, labels in enumerate(rotations):
        if len(labels) != 4:
            raise BadRotationOrbit(f"vertex {v} has {len(labels)} edge ends, expected 4")
        for slot, lab in enumerate(labels):
            where.setdefault(lab, []).append(4 * v + slot)
    mate = [0] * (4 * len(rotations))
    for lab, ends in where.items():
        if len(ends) != 2:
            raise NotInvolution(f"edge label {lab!r} occurs {len(ends)} times")
        a, b = ends
        mate[a], mate[b] = b, a
    return build(len(rotations), mate, free_loops=free_loops, **kwargs)


def relabel(g: PlaneMap, vertex_perm: Sequence[int], slot_shift: Sequence[int]) -> PlaneMap:
    """Rename vertex ``v`` to ``vertex_perm[v]`` and rotate its slots by ``slot_shift[v]``."""
    new = lambda d: 4 * vertex_perm[d >> 2] + (((d & 3) + slot_shift[d >> 2]) & 3)
    mate = [0] * g.dart_count
    for d in range(g.dart_count):
        mate[new(d)] = new(g.mate[d])
    return PlaneMap(g.vertex_count, tuple(mate), g.free_loops)


def mirror(g: PlaneMap) -> PlaneMap:
    """The reflected map: every rotation reversed."""
    new = lambda d: (d & ~3) | ((-d) & 3)
    mate = [0] * g.dart_count
    for d in range(g.dart_count):
        mate[new(d)] = new(g.mate[d])
    return PlaneMap(g.vertex_count, tuple(mate), g.free_loops)


def disjoint_union(*maps: PlaneMap) -> PlaneMap:
    mate: List[int] = []
    loops = 0
    for g in maps:
        off = len(mate)
        mate.extend(m + off for m in g.mate)
        loops += g.free_loops
    return PlaneMap(len(mate) // 4, tuple(mate), loops)


def components(g: PlaneMap) -> List[Tuple[PlaneMap, Tuple[int, ...]]]:
    """Split into connected pieces.

    Returns ``(piece, vertex_ids)`` pairs where ``vertex_ids[i]`` is the
    original id of the piece's vertex ``i``.  Each free loop becomes its own
    vertexless piece.
    """
    comps = g.vertex_components
    out = []
    for c in range(max(comps) + 1 if comps else 0):
        verts = tuple(v for v in range(g.vertex_count) if comps[v] == c)
        out.append((induced(g, verts), verts))
    for _ in range(g.free_loops):
        out.append((PlaneMap(0, (), 1), ()))
    return out


def induced(g: PlaneMap, verts: Sequence[int]) -> PlaneMap:
    """Sub-map on a union of components (no edge may leave ``verts``)."""
    index = {v: i for i, v in enumerate(verts)}
    mate = []
    for v in verts:
        for slot in range(4):
            m = g.mate[4 * v + slot]
            mate.append(4 * index[m >> 2] + (m & 3))
    return PlaneMap(len(verts), tuple(mate), 0)


# ----------------------------------------------------------- special graphs
class ExceptionKind(enum.Enum):
    UNKNOT_PROJECTION = 0
    FIGURE_EIGHT = 1
    HOPF_PROJECTION = 2
    TREFOIL_PROJECTION = 3


def exception(kind: ExceptionKind) -> PlaneMap:
    """The four atoroidal graphs having a face with fewer than three sides."""
    if kind is ExceptionKind.UNKNOT_PROJECTION:
        return build(0, [], free_loops=1)
    if kind is ExceptionKind.FIGURE_EIGHT:
        return from_rotation_lists([["a", "a", "b", "b"]])
    if kind is ExceptionKind.HOPF_PROJECTION:
        return from_rotation_lists([["a", "b", "c", "d"], ["d", "c", "b", "a"]])
    if kind is ExceptionKind.TREFOIL_PROJECTION:
        return from_rotation_lists(
            [["x1", "y1", "z2", "z1"], ["y1", "x1", "x2", "y2"], ["z1", "z2", "y2", "x2"]]
        )
    raise ValueError(kind)


def _angle_rotations(positions, adjacency) -> List[List[Hashable]]:
    rotations = []
    for v, (x, y) in enumerate(positions):
        ends = []
        for w, label in adjacency[v]:
            wx, wy = positions[w]
            ends.append((math.atan2(wy - y, wx - x), label))
        ends.sort()
        rotations.append([label for _, label in ends])
    return rotations


def torus_graph(n: int) -> PlaneMap:
    """The n-antiprism: projection of the (3, n) torus link.

    ``2n`` vertices, two n-gon faces and ``2n`` triangles.
    """
    if n < 3:
        raise ValueError("torus_graph needs n >= 3")
    positions = []
    for i in range(n):
        t = 2 * math.pi * i / n
        positions.append((math.cos(t), math.sin(t)))
    for i in range(n):
        t = 2 * math.pi * (i - 0.5) / n
        positions.append((3 * math.cos(t), 3 * math.sin(t)))
    adjacency: List[List[Tuple[int, Hashable]]] = [[] for _ in range(2 * n)]

    def join(u, w, label):
        adjacency[u].append((w, label))
        adjacency[w].append((u, label))

    for i in range(n):
        a, a_next = i, (i + 1) % n
        b, b_next = n + i, n + (i + 1) % n
        join(a, a_next, ("in", i))
        join(b, b_next, ("out", i))
        join(a, b, ("l", i))
        join(a, b_next, ("r", i))
    return from_rotation_lists(_angle_rotations(positions, adjacency))


def face_vector(g: PlaneMap) -> FaceVector:
    """Map face size (corners counted with multiplicity) to number of faces."""
    counts: FaceVector = {}
    for f in g.faces:
        counts[len(f)] = counts.get(len(f), 0) + 1
    return dict(sorted(counts.items()))


def min_face_size(g: PlaneMap) -> int:
    return min(g.face_sizes()) if g.faces else 0


# ------------------------------------------------------------- planar code
def to_planar_code(g: PlaneMap) -> str:
    lines = [f"AG {g.vertex_count} {g.free_loops}"]
    for v in range(g.vertex_count):
        ends = " ".join(f"{m >> 2}.{m & 3}" for m in g.mate[4 * v : 4 * v + 4])
        lines.append(f"{v}: {ends}")
    return "\n".join(lines) + "\n"


def _parse_dart(token: str, lineno: int) -> int:
    try:
        v, s = token.split(".")
        v, s = int(v), int(s)
    except ValueError:
        raise ParseError(f"bad dart reference {token!r}", lineno) from None
    if not 0 <= s < 4 or v < 0:
        raise ParseError(f"dart reference out of range: {token!r}", lineno)
    return 4 * v + s


def parse_planar_codes(text: str) -> List[PlaneMap]:
    """Parse one or more maps in the ``AG`` planar-code text format."""
    maps = []
    current = None

    def finish():
        if current is None:
            return
        header_line, nv, loops, rows = current
        if len(rows) != nv:
            raise ParseError(f"expected {nv} vertex lines, found {len(rows)}", header_line)
        mate = []
        for v in range(nv):
            if v not in rows:
                raise ParseError(f"missing vertex line {v}", header_line)
            lineno, darts = rows[v]
            if any(d >= 4 * nv for d in darts):
                raise ParseError("dart refers to a vertex that does not exist", lineno)
            mate.extend(darts)
        try:
            maps.append(build(nv, mate, free_loops=loops))
        except PlaneMapError as exc:
            raise ParseError(str(exc), header_line) from exc

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("AG"):
            finish()
            parts = line.split()
            if len(parts) != 3:
                raise ParseError("header must be 'AG <V> <free_loops>'", lineno)
            try:
                nv, loops = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError("header counts must be integers", lineno) from None
            if nv < 0 or loops < 0:
                raise ParseError("header counts must be non-negative", lineno)
            current = (lineno, nv, loops, {})
            continue
        if current is None:
            raise ParseError("vertex line before 'AG' header", lineno)
        head, sep, rest = line.partition(":")
        if not sep:
            raise ParseError("vertex line must look like 'v: a.s b.s c.s d.s'", lineno)
        try:
            v = int(head)
        except ValueError:
            raise ParseError(f"bad vertex id {head!r}", lineno) from None
        tokens = rest.split()
        if len(tokens) != 4:
            raise ParseError(f"vertex {v} lists {len(tokens)} darts, expected 4", lineno)
        if v in current[3] or not 0 <= v < current[1]:
            raise ParseError(f"vertex id {v} duplicated or out of range", lineno)
        current[3][v] = (lineno, [_parse_dart(t, lineno) for t in tokens])
    finish()
    return maps


def parse_planar_code(text: str) -> PlaneMap:
    maps = parse_planar_codes(text)
    if len(maps) != 1:
        raise ParseError(f"expected exactly one map, found {len(maps)}")
    return maps[0]


def iter_darts(g: PlaneMap) -> Iterable[int]:
    return range(g.dart_count)
