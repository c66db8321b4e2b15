"""Brute-force reference computations used to check the library.

Nothing here calls the curve enumerator, overlay or canonical code of the
package; only the map data structure and CurveCode normalisation are shared.
"""

from __future__ import annotations

import itertools
from typing import Dict, Iterator, List, Set, Tuple

from atoroidal import CurveCode
from atoroidal.planemap import PlaneMap

Point = Tuple[int, int]  # (edge, rank), rank counted from the low dart's vertex


def _multiplicities(edges: int, n: int) -> Iterator[Tuple[int, ...]]:
    for cut in itertools.combinations(range(n + edges - 1), edges - 1):
        prev = -1
        out = []
        for c in cut + (n + edges - 1,):
            out.append(c - prev - 1)
            prev = c
        yield tuple(out)


def _boundary_points(g: PlaneMap, m: Tuple[int, ...]) -> Dict[int, List[Point]]:
    # walking a face follows each dart from its own vertex to its mate's,
    # so points on an edge are met in rank order along the low dart only
    low = {}
    for e, (lo, hi) in enumerate(g.edges):
        low[lo] = (e, True)
        low[hi] = (e, False)
    out: Dict[int, List[Point]] = {}
    for f, cycle in enumerate(g.faces):
        pts: List[Point] = []
        for d in cycle:
            e, forward = low[d]
            ranks = range(m[e]) if forward else range(m[e] - 1, -1, -1)
            pts.extend((e, r) for r in ranks)
        out[f] = pts
    return out


def _noncrossing_matchings(k: int) -> List[List[Tuple[int, int]]]:
    """All non-crossing perfect matchings of points 0..k-1 on a circle."""
    memo: Dict[Tuple[int, int], List[List[Tuple[int, int]]]] = {}

    def rec(lo: int, hi: int):
        if lo > hi:
            return [[]]
        if (lo, hi) in memo:
            return memo[(lo, hi)]
        res = []
        for j in range(lo + 1, hi + 1, 2):
            for inner in rec(lo + 1, j - 1):
                for outer in rec(j + 1, hi):
                    res.append([(lo, j)] + inner + outer)
        memo[(lo, hi)] = res
        return res

    return rec(0, k - 1)


def brute_force_curves(g: PlaneMap, n: int, taut: bool = True) -> Set[CurveCode]:
    if n == 0:
        return {CurveCode((), (f,)) for f in range(len(g.faces))}
    found: Set[CurveCode] = set()
    nf = len(g.faces)
    for m in _multiplicities(g.edge_count, n):
        pts = _boundary_points(g, m)
        if any(len(p) % 2 for p in pts.values()):
            continue
        options = []
        for f in range(nf):
            p = pts[f]
            options.append([[(f, p[a], p[b]) for a, b in mt] for mt in _noncrossing_matchings(len(p))])
        for combo in itertools.product(*options):
            chords = [ch for face in combo for ch in face]
            if taut and any(a[0] == b[0] for _, a, b in chords):
                continue
            nbrs: Dict[Point, List[Tuple[int, Point]]] = {}
            for f, a, b in chords:
                nbrs.setdefault(a, []).append((f, b))
                nbrs.setdefault(b, []).append((f, a))
            start = min(nbrs)
            cross, passes = [start], []
            prev_face, cur = None, start
            while True:
                f, nxt = next((f, q) for f, q in nbrs[cur] if f != prev_face)
                passes.append(f)
                if nxt == start:
                    break
                cross.append(nxt)
                prev_face, cur = f, nxt
            if len(cross) != n:
                continue  # more than one closed component
            found.add(CurveCode(tuple(cross), tuple(passes)).normalized())
    return found
