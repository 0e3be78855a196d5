"""Boundary word of the monotile, placed polygons and exact predicates."""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from . import kernels
from .lattice import (
    UNIT_PARAMS,
    EdgeParams,
    QuadNumber,
    Vec4,
    ZERO,
    embed_exact,
    embed_float,
    scaled_coords,
    unit_vec4,
)

# direction indices (1..12) of the 14 edges of the left-handed tile in
# orientation M1, walked counterclockwise from the reference vertex
CONTOUR_WORD = (1, 11, 2, 4, 1, 3, 6, 8, 5, 7, 7, 9, 12, 10)

# index of the vertex in the middle of the long edge (edges 9 and 10 share direction 7)
LONG_EDGE_MID = 10


def _mirror_dir(k: int) -> int:
    return (1 - k) % 12 + 1


def contour_word(chirality: str = "left") -> tuple[int, ...]:
    """Edge directions for the given hand; both words run counterclockwise."""
    if chirality == "left":
        return CONTOUR_WORD
    if chirality == "right":
        # reflect, then reverse the walk so the boundary stays counterclockwise
        return tuple((_mirror_dir(k) + 5) % 12 + 1 for k in reversed(CONTOUR_WORD))
    raise ValueError(f"chirality must be 'left' or 'right', got {chirality!r}")


def word_vertices(word) -> list[Vec4]:
    """Vertex offsets traced by a word, starting at the origin (closing vertex dropped)."""
    pts = [ZERO]
    for k in word[:-1]:
        pts.append(pts[-1] + unit_vec4(k))
    return pts


def parity_census(word) -> tuple[int, int]:
    odd = sum(1 for k in word if k % 2)
    return odd, len(word) - odd


def repeats(word) -> list[int]:
    """Positions i with word[i] == word[i+1] (cyclically)."""
    n = len(word)
    return [i for i in range(n) if word[i] == word[(i + 1) % n]]


_BASE = {c: word_vertices(contour_word(c)) for c in ("left", "right")}


@dataclass(frozen=True, order=True)
class PlacedMonotile:
    orient: int
    anchor: Vec4
    chirality: str = field(default="left", compare=False)

    def __post_init__(self):
        if not 1 <= self.orient <= 12:
            raise ValueError(f"orientation must be in 1..12, got {self.orient}")

    @property
    def is_odd(self) -> bool:
        return self.orient % 2 == 1

    def vertex_vecs(self) -> list[Vec4]:
        return vertex_vecs(self)

    def to_json(self) -> dict:
        return {"orient": self.orient, "anchor": self.anchor.to_list()}

    @classmethod
    def from_json(cls, d: dict) -> PlacedMonotile:
        return cls(int(d["orient"]), Vec4.of(d["anchor"]))


def vertex_vecs(m: PlacedMonotile) -> list[Vec4]:
    r = m.orient - 1
    return [m.anchor + v.rotate(r) for v in _BASE[m.chirality]]


def vertices(m: PlacedMonotile, params: EdgeParams | None = None):
    """Polygon of ``m``: exact points for unit edges, float pairs otherwise."""
    vs = vertex_vecs(m)
    if params is None or params.is_unit:
        return [embed_exact(v) for v in vs]
    return [embed_float(v, params) for v in vs]


def scaled_polygon(m: PlacedMonotile) -> list[tuple[int, int, int, int]]:
    return [scaled_coords(v) for v in vertex_vecs(m)]


def exact_area(word=CONTOUR_WORD) -> QuadNumber:
    """Shoelace area of the unit-edge tile, as p + q*sqrt3."""
    pts = [embed_exact(v) for v in word_vertices(word)]
    acc = QuadNumber(Fraction(0), Fraction(0), 3)
    n = len(pts)
    for i in range(n):
        p, q = pts[i], pts[(i + 1) % n]
        acc = acc + (p.x * q.y - q.x * p.y)
    return acc * Fraction(1, 2)


def area(params: EdgeParams = UNIT_PARAMS):
    """Area of Tile(a, b); exact for unit edges.

    The edge classes are read in the even orientation M2, where 8 edges run
    along even directions and get length a.
    """
    if params.is_unit:
        return exact_area()
    pts = [embed_float(v.rotate(1), params) for v in _BASE["left"]]
    return abs(shoelace(pts))


def shoelace(pts) -> float:
    n = len(pts)
    s = 0.0
    for i in range(n):
        x0, y0 = pts[i]
        x1, y1 = pts[(i + 1) % n]
        s += x0 * y1 - x1 * y0
    return s / 2


def overlap(m1: PlacedMonotile, m2: PlacedMonotile) -> bool:
    """True iff the open interiors intersect (exact)."""
    return kernels.polygons_overlap(scaled_polygon(m1), scaled_polygon(m2))


_CELL = 4.2


def _cell_of(v: Vec4) -> tuple[int, int]:
    x, y = embed_float(v)
    return math.floor(x / _CELL), math.floor(y / _CELL)


def candidate_pairs(tiles) -> list[tuple[int, int]]:
    """Index pairs of tiles whose anchors fall in neighbouring grid cells.

    Every vertex lies within 4.15 of its anchor, so touching tiles have
    anchors closer than 8.3; cells of side 4.2 searched two deep cover that.
    """
    grid = defaultdict(list)
    for i, m in enumerate(tiles):
        grid[_cell_of(m.anchor)].append(i)
    out = []
    for (cx, cy), members in grid.items():
        for dx in range(-2, 3):
            for dy in range(-2, 3):
                other = grid.get((cx + dx, cy + dy))
                if not other:
                    continue
                for i in members:
                    for j in other:
                        if i < j:
                            out.append((i, j))
    out.sort()
    return out


def find_overlaps(tiles) -> list[tuple[int, int]]:
    """All overlapping index pairs among distinct placed tiles."""
    tiles = list(tiles)
    polys = [scaled_polygon(m) for m in tiles]
    return kernels.overlapping_pairs(polys, candidate_pairs(tiles))
