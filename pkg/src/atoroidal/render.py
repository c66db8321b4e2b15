"""Straight-line drawings of plane maps and SVG output.

Vertices are placed by a barycentric (Tutte) layout with the largest face as
the outer polygon.  Parallel edges bend through a waypoint offset to the side
in rotation order; loops are drawn as small triangles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from .planemap import PlaneMap, components

Point = Tuple[float, float]


@dataclass
class RenderLayout:
    positions: List[Point]
    outer_face: Optional[int]
    edge_paths: List[List[Point]] = field(default_factory=list)
    loops: List[Tuple[Point, float]] = field(default_factory=list)  # free loops: centre, radius


def _outer_cycle(g: PlaneMap) -> Tuple[int, List[int]]:
    sizes = [len(f) for f in g.faces]
    best = max(range(len(sizes)), key=lambda f: (len({d >> 2 for d in g.faces[f]}), sizes[f], -f))
    seen: List[int] = []
    for d in g.faces[best]:
        v = d >> 2
        if v not in seen:
            seen.append(v)
    return best, seen


def _vertex_positions(g: PlaneMap) -> Tuple[Optional[int], np.ndarray]:
    nv = g.vertex_count
    if nv == 1:
        return (None, np.zeros((1, 2)))
    outer_face, cycle = _outer_cycle(g)
    pos = np.zeros((nv, 2))
    k = len(cycle)
    if k == 2 and nv == 2:
        pos[cycle[0]] = (-1.0, 0.0)
        pos[cycle[1]] = (1.0, 0.0)
        return outer_face, pos
    # the face walk runs clockwise around its face, so list the outer
    # polygon in reverse to keep the interior counterclockwise
    for i, v in enumerate(reversed(cycle)):
        t = 2 * math.pi * i / k + math.pi / 2
        pos[v] = (math.cos(t), math.sin(t))
    inner = [v for v in range(nv) if v not in cycle]
    if inner:
        idx = {v: i for i, v in enumerate(inner)}
        a = np.zeros((len(inner), len(inner)))
        b = np.zeros((len(inner), 2))
        for v in inner:
            r = idx[v]
            for s in range(4):
                w = g.mate[4 * v + s] >> 2
                if w == v:
                    continue
                a[r, r] += 1
                if w in idx:
                    a[r, idx[w]] -= 1
                else:
                    b[r] += pos[w]
        sol = np.linalg.solve(a, b)
        for v in inner:
            pos[v] = sol[idx[v]]
    return outer_face, pos


def _dart_angles(g: PlaneMap, pos: np.ndarray) -> List[float]:
    """Direction of each dart; loop darts interpolate between their neighbours."""
    ang: List[Optional[float]] = [None] * g.dart_count
    for d in range(g.dart_count):
        v, w = d >> 2, g.mate[d] >> 2
        if v != w and not np.allclose(pos[v], pos[w]):
            dx, dy = pos[w] - pos[v]
            ang[d] = math.atan2(dy, dx)
    out = [0.0] * g.dart_count
    for v in range(g.vertex_count):
        darts = [4 * v + s for s in range(4)]
        known = [i for i in range(4) if ang[darts[i]] is not None]
        if not known:
            for i in range(4):
                out[darts[i]] = math.pi / 2 * i
            continue
        for i in range(4):
            if ang[darts[i]] is not None:
                out[darts[i]] = ang[darts[i]]
                continue
            # previous and next known dart in rotation order
            p = next(j for j in range(1, 5) if (i - j) % 4 in known)
            q = next(j for j in range(1, 5) if (i + j) % 4 in known)
            a0 = ang[darts[(i - p) % 4]]
            a1 = ang[darts[(i + q) % 4]]
            span = (a1 - a0) % (2 * math.pi) or 2 * math.pi
            out[darts[i]] = a0 + span * p / (p + q)
    return out


def layout(g: PlaneMap) -> RenderLayout:
    if not g.is_connected:
        return _layout_pieces(g)
    if g.vertex_count == 0:
        return RenderLayout([], None, [], [((0.0, 0.0), 1.0)])
    outer, pos = _vertex_positions(g)
    angles = _dart_angles(g, pos)
    paths: List[List[Point]] = []
    groups: Dict[Tuple[int, int], List[int]] = {}
    for lo, hi in g.edges:
        u, w = lo >> 2, hi >> 2
        if u == w:
            r = 0.35
            p1 = pos[u] + r * np.array([math.cos(angles[lo]), math.sin(angles[lo])])
            p2 = pos[u] + r * np.array([math.cos(angles[hi]), math.sin(angles[hi])])
            paths.append([tuple(pos[u]), tuple(p1), tuple(p2), tuple(pos[u])])
        else:
            groups.setdefault((min(u, w), max(u, w)), []).append(lo if u < w else hi)
    for (u, w), darts in sorted(groups.items()):
        k = len(darts)
        pu, pw = pos[u], pos[w]
        if k == 1:
            paths.append([tuple(pu), tuple(pw)])
            continue
        # order the parallel darts counterclockwise around u, starting after a gap
        slots = sorted(d & 3 for d in darts)
        others = [s for s in range(4) if s not in slots]
        start = (others[0] + 1) % 4 if others else slots[0]
        ordered = sorted(darts, key=lambda d: ((d & 3) - start) % 4)
        vec = pw - pu
        length = float(np.hypot(*vec)) or 1.0
        normal = np.array([-vec[1], vec[0]]) / length
        h = 0.28 * length
        for i, d in enumerate(ordered):
            off = (i - (k - 1) / 2) * h
            mid = (pu + pw) / 2 + off * normal
            paths.append([tuple(pu), tuple(mid), tuple(pw)])
    return RenderLayout([tuple(p) for p in pos], outer, paths)


def _layout_pieces(g: PlaneMap) -> RenderLayout:
    positions: List[Point] = [(0.0, 0.0)] * g.vertex_count
    paths: List[List[Point]] = []
    loops: List[Tuple[Point, float]] = []
    x = 0.0
    for piece, verts in components(g):
        sub = layout(piece)
        shift = x + 1.5
        for k, v in enumerate(verts):
            px, py = sub.positions[k]
            positions[v] = (px + shift, py)
        paths.extend([[(px + shift, py) for px, py in path] for path in sub.edge_paths])
        loops.extend(((cx + shift, cy), r) for (cx, cy), r in sub.loops)
        x += 3.5
    return RenderLayout(positions, None, paths, loops)


# ---------------------------------------------------------------- checks
def _proper_cross(p1, p2, q1, q2) -> bool:
    def orient(a, b, c):
        v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        return 0 if abs(v) < 1e-9 else (1 if v > 0 else -1)

    o1, o2 = orient(p1, p2, q1), orient(p1, p2, q2)
    o3, o4 = orient(q1, q2, p1), orient(q1, q2, p2)
    return o1 * o2 < 0 and o3 * o4 < 0


def segment_crossings(lay: RenderLayout) -> int:
    """Number of pairs of drawn segments that cross in their interiors."""
    segs = [(a, b) for path in lay.edge_paths for a, b in zip(path, path[1:])]
    count = 0
    for i in range(len(segs)):
        for j in range(i + 1, len(segs)):
            if _proper_cross(*segs[i], *segs[j]):
                count += 1
    return count


# ------------------------------------------------------------------- svg
def to_svg(g: PlaneMap, lay: Optional[RenderLayout] = None, size: int = 400, title: str = "") -> str:
    lay = layout(g) if lay is None else lay
    pts = list(lay.positions) + [p for path in lay.edge_paths for p in path]
    pts += [(cx + dx * r, cy + dy * r) for (cx, cy), r in lay.loops for dx, dy in ((1, 1), (-1, -1))]
    if not pts:
        pts = [(0.0, 0.0)]
    xs, ys = [p[0] for p in pts], [p[1] for p in pts]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1e-6)
    pad = 20
    scale = (size - 2 * pad) / span

    def tx(p):
        return (pad + (p[0] - min(xs)) * scale, size - pad - (p[1] - min(ys)) * scale)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">'
    ]
    if title:
        out.append(f"  <title>{title}</title>")
    out.append('  <g fill="none" stroke="black" stroke-width="2">')
    for path in lay.edge_paths:
        coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in map(tx, path))
        out.append(f'    <polyline class="edge" points="{coords}"/>')
    for c, r in lay.loops:
        x, y = tx(c)
        out.append(f'    <circle class="loop" cx="{x:.2f}" cy="{y:.2f}" r="{r * scale:.2f}"/>')
    out.append("  </g>")
    out.append('  <g fill="black">')
    for v, p in enumerate(lay.positions):
        x, y = tx(p)
        out.append(f'    <circle class="vertex" id="v{v}" cx="{x:.2f}" cy="{y:.2f}" r="4"/>')
    out.append("  </g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
