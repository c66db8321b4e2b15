"""Canonical codes for embedded 4-valent graphs.

The code of a rooted map is its breadth-first dart labelling: vertices are
numbered in order of discovery and each vertex lists, for its four darts in
rotation order starting at the dart it was entered by, the vertex number and
relative slot of the mate.  The canonical code is the least such code over
all roots (and over both rotation senses when reflections are allowed).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import List, Tuple

from .errors import Disconnected, ParseError
from .planemap import PlaneMap, build, components

FORMAT_VERSION = 1


class Chirality(enum.Enum):
    MOD_REFLECTION = "mod-reflection"
    ORIENTED = "oriented"


@dataclass(frozen=True, order=True)
class CanonicalCode:
    data: bytes
    chirality: Chirality = Chirality.MOD_REFLECTION

    def hex(self) -> str:
        return self.data.hex()

    def __str__(self) -> str:
        return self.data.hex()

    @property
    def vertex_count(self) -> int:
        return int.from_bytes(self.data[1:3], "big")

    @classmethod
    def fromhex(cls, text: str, chirality: Chirality = Chirality.MOD_REFLECTION):
        try:
            data = bytes.fromhex(text.strip())
        except ValueError:
            raise ParseError(f"not a hex canonical code: {text!r}") from None
        if len(data) < 5 or data[0] != FORMAT_VERSION:
            raise ParseError("unsupported canonical code version")
        return cls(data, chirality)


def _rooted_code(mate, nv: int, root: int, step: int) -> List[int]:
    # step = +1 walks the rotation counterclockwise, -1 clockwise
    label = [-1] * nv
    entry = [0] * nv
    label[root >> 2] = 0
    entry[root >> 2] = root
    order = [root >> 2]
    code: List[int] = []
    i = 0
    while i < len(order):
        v = order[i]
        base = entry[v]
        for k in range(4):
            d = (base & ~3) | ((base + step * k) & 3)
            m = mate[d]
            w = m >> 2
            if label[w] < 0:
                label[w] = len(order)
                entry[w] = m
                order.append(w)
            off = (step * ((m & 3) - (entry[w] & 3))) & 3
            code.append(4 * label[w] + off)
        i += 1
    return code


def _code_words(g: PlaneMap, chirality: Chirality) -> List[int]:
    nv = g.vertex_count
    mate = g.mate
    steps = (1, -1) if chirality is Chirality.MOD_REFLECTION else (1,)
    best = None
    for step in steps:
        for root in range(4 * nv):
            code = _rooted_code(mate, nv, root, step)
            if best is None or code < best:
                best = code
    return best


def canonical_code(g: PlaneMap, mode: Chirality = Chirality.MOD_REFLECTION) -> CanonicalCode:
    """Labelling-independent code of a connected map.

    A map with no vertices and one free loop gets the reserved code with
    vertex count zero.
    """
    if not g.is_connected:
        raise Disconnected("canonical_code needs a connected map")
    header = bytes([FORMAT_VERSION]) + g.vertex_count.to_bytes(2, "big") + g.free_loops.to_bytes(2, "big")
    if g.vertex_count == 0:
        return CanonicalCode(header, mode)
    words = _code_words(g, mode)
    body = b"".join(w.to_bytes(2, "big") for w in words)
    return CanonicalCode(header + body, mode)


def from_canonical_code(code: CanonicalCode) -> PlaneMap:
    """Rebuild the map whose labelling is the one the code describes."""
    data = code.data
    if data[0] != FORMAT_VERSION:
        raise ParseError("unsupported canonical code version")
    nv = int.from_bytes(data[1:3], "big")
    loops = int.from_bytes(data[3:5], "big")
    body = data[5:]
    if len(body) != 8 * nv:
        raise ParseError("canonical code body has the wrong length")
    mate = [int.from_bytes(body[2 * i : 2 * i + 2], "big") for i in range(4 * nv)]
    try:
        return build(nv, mate, free_loops=loops)
    except ValueError as exc:
        raise ParseError(f"canonical code does not describe a valid map: {exc}") from exc


def is_isomorphic(g1: PlaneMap, g2: PlaneMap, mode: Chirality = Chirality.MOD_REFLECTION) -> bool:
    if (g1.vertex_count, g1.free_loops) != (g2.vertex_count, g2.free_loops):
        return False
    if g1.is_connected != g2.is_connected:
        return False
    return canonical_key(g1, mode) == canonical_key(g2, mode)


def canonical_key(g: PlaneMap, mode: Chirality = Chirality.MOD_REFLECTION) -> Tuple[CanonicalCode, ...]:
    """Sorted component codes; works for disconnected maps too.

    The relative placement of components on the sphere is not part of a
    :class:`PlaneMap`, so this is the natural key for disjoint unions.
    """
    if g.is_connected:
        return (canonical_code(g, mode),)
    return tuple(sorted(canonical_code(piece, mode) for piece, _ in components(g)))
