"""Structural features of a resolved patch.

Duplicated tiles, connection and green junction lines, glue points,
junction points between three metatiles and the triangles formed by the
junction lines. All tests are exact lattice comparisons.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .clusters import (
    ConnectionLine,
    GluePoint,
    connection_line,
    duplicated_partners,
    glue_point,
    metatile,
    ordered_pair,
)
from .lattice import (
    TRANSLATION_CLASS,
    ExactPoint,
    Vec4,
    embed_exact,
    scaled_coords,
    translation_class,
)
from ._kernels_py import strictly_inside
from .shape import LONG_EDGE_MID, PlacedMonotile, contour_word, vertex_vecs

# decoration hexagon of a tile, as vertex indices plus one extra lattice point
HEX_EXTRA = Vec4(1, -1, 1, 1)
HEX_CENTRE = Vec4(2, 0, 0, 1)

_HALF = Fraction(1, 2)


class TranslationLawError(ValueError):
    pass


class JunctionError(ValueError):
    pass


def interior_angles(word=None) -> list[int]:
    """Interior angle at each vertex of the tile, in 30 degree units."""
    word = contour_word() if word is None else word
    out = []
    n = len(word)
    for k in range(n):
        t = (word[k] - word[k - 1]) % 12
        if t > 6:
            t -= 12
        out.append(6 - t)
    return out


_ANGLES = interior_angles()


def hexagon(t: PlacedMonotile) -> list[Vec4]:
    v = vertex_vecs(t)
    extra = t.anchor + HEX_EXTRA.rotate(t.orient - 1)
    return [v[7], v[9], extra, v[1], v[3], v[5]]


def hexagon_centre(t: PlacedMonotile) -> Vec4:
    return t.anchor + HEX_CENTRE.rotate(t.orient - 1)


class TileIndex:
    """Lookup tables over the deduplicated tiles of a patch."""

    def __init__(self, patch):
        self.patch = patch
        self.tiles: list[PlacedMonotile] = list(patch.monotiles)
        self.pos = {t: i for i, t in enumerate(self.tiles)}
        self.verts = [vertex_vecs(t) for t in self.tiles]
        self.owner = [patch.owners[t] for t in self.tiles]

    @cached_property
    def edges(self) -> dict[tuple[Vec4, Vec4], int]:
        out = {}
        for i, vs in enumerate(self.verts):
            for a, b in zip(vs, vs[1:] + vs[:1]):
                out[(a, b)] = i
        return out

    @cached_property
    def at_vertex(self) -> dict[Vec4, list[tuple[int, int]]]:
        out = defaultdict(list)
        for i, vs in enumerate(self.verts):
            for k, v in enumerate(vs):
                out[v].append((i, k))
        return dict(out)

    @cached_property
    def full_vertices(self) -> frozenset:
        """Lattice points completely surrounded by tiles of the patch."""
        return frozenset(p for p, inc in self.at_vertex.items() if sum(_ANGLES[k] for _, k in inc) == 12)

    @cached_property
    def interior(self) -> list[bool]:
        full = self.full_vertices
        return [all(v in full for v in vs) for vs in self.verts]

    @cached_property
    def edge_neighbours(self) -> list[tuple[int, int]]:
        out = set()
        for (a, b), i in self.edges.items():
            j = self.edges.get((b, a))
            if j is not None and i < j:
                out.add((i, j))
        return sorted(out)

    def metatile_of(self, i: int) -> tuple[int, ...]:
        return self.owner[i]


def _index(patch_or_index) -> TileIndex:
    return patch_or_index if isinstance(patch_or_index, TileIndex) else TileIndex(patch_or_index)


# ---------------------------------------------------------------------------
# duplicated tiles and connection lines


def duplicate_pairs(patch) -> list[tuple[PlacedMonotile, PlacedMonotile]]:
    """Edge-adjacent tiles of equal orientation, ordered so first.v10 = second.v0.

    Raises TranslationLawError unless the pair is even and offset by the
    translation assigned to its orientation.
    """
    ix = _index(patch)
    out = []
    for i, j in ix.edge_neighbours:
        a, b = ix.tiles[i], ix.tiles[j]
        if a.orient != b.orient:
            continue
        if a.is_odd:
            raise TranslationLawError(f"odd tiles M{a.orient} are edge-adjacent")
        cls = translation_class(b.anchor - a.anchor)
        if cls != TRANSLATION_CLASS[a.orient]:
            raise TranslationLawError(f"M{a.orient} copies offset by {b.anchor - a.anchor}")
        out.append(ordered_pair(a, b))
    return sorted(out)


def duplicate_groups(patch) -> list[list[PlacedMonotile]]:
    """Connected groups of mutually translated copies."""
    parent: dict = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in duplicate_pairs(patch):
        parent[find(a)] = find(b)
    groups = defaultdict(list)
    for x in parent:
        groups[find(x)].append(x)
    return sorted(sorted(g) for g in groups.values())


def core_border(m) -> frozenset:
    """Lattice points on the outline of a placed metatile's C core."""
    spec = metatile(m.kind, m.orient)
    return frozenset(m.anchor + v for v in spec.border)


def connection_lines(patch, cross_only: bool = False) -> list[ConnectionLine]:
    """One line per duplicated pair; ``cross_only`` keeps pairs split between metatiles."""
    ix = _index(patch)
    mets = ix.patch.metatiles
    borders = {}
    out = []
    for a, b in duplicate_pairs(ix):
        oa, ob = ix.owner[ix.pos[a]], ix.owner[ix.pos[b]]
        if cross_only and set(oa) == set(ob):
            continue
        pts = set()
        for k in set(oa) | set(ob):
            if k not in borders:
                borders[k] = core_border(mets[k])
            pts |= borders[k]
        out.append(connection_line(a, b, frozenset(pts)))
    return out


def core_pairs(patch) -> dict[int, list[tuple[PlacedMonotile, PlacedMonotile]]]:
    """The three duplicated corona tiles of each metatile's C core, with their copies.

    Pairs whose copy lies outside the patch are left out.
    """
    ix = _index(patch)
    out = {}
    for k, m in enumerate(ix.patch.metatiles):
        found = []
        for x, y in duplicated_partners(m.orient):
            x = PlacedMonotile(x.orient, x.anchor + m.anchor)
            y = PlacedMonotile(y.orient, y.anchor + m.anchor)
            if y in ix.pos:
                found.append((x, y))
        out[k] = found
    return out


def glue_points_by_core(patch) -> dict[int, list[GluePoint]]:
    """The three glue points of each metatile's C core, flagged by whether they lie on its outline.

    A glue point is the vertex a duplicated corona tile shares with its copy,
    so it is fixed by the core alone even when the copy lies outside the patch.
    """
    ix = _index(patch)
    out = {}
    for k, m in enumerate(ix.patch.metatiles):
        border = core_border(m)
        pts = []
        for x, y in duplicated_partners(m.orient):
            g = glue_point(x, y) + m.anchor
            pts.append(GluePoint(g, g in border))
        out[k] = pts
    return out


# ---------------------------------------------------------------------------
# green junction lines


@dataclass(frozen=True)
class GreenLine:
    """Line through a pair of even tiles related by a half turn.

    The pair shares its long edge, whose midpoint ``centre`` is the centre of
    the half turn. The line runs along ``translation`` with length equal to it.
    """

    cls: str
    centre: Vec4
    translation: Vec4
    pair: tuple[PlacedMonotile, PlacedMonotile]

    @property
    def endpoints(self) -> tuple[ExactPoint, ExactPoint]:
        c = embed_exact(self.centre)
        h = embed_exact(self.translation)
        half = ExactPoint(h.x * _HALF, h.y * _HALF)
        return c - half, c + half


def green_lines(patch) -> list[GreenLine]:
    ix = _index(patch)
    out = []
    for i, j in ix.edge_neighbours:
        a, b = ix.tiles[i], ix.tiles[j]
        if a.is_odd or b.is_odd or (a.orient - b.orient) % 12 != 6:
            continue
        va, vb = ix.verts[i], ix.verts[j]
        if va[LONG_EDGE_MID] != vb[LONG_EDGE_MID]:
            raise TranslationLawError("half-turn pair does not share its long edge")
        d = vb[0] - va[0]
        t = Vec4(d.c1 // 2, d.c2 // 2, d.c3 // 2, d.c4 // 2)
        cls = translation_class(t)
        if t * 2 != d or cls is None:
            raise TranslationLawError(f"half-turn pair offset {d} is not twice a translation")
        out.append(GreenLine(cls, va[LONG_EDGE_MID], t, (a, b)))
    return out


# ---------------------------------------------------------------------------
# metatile adjacency along junction lines


def metatile_links(patch) -> dict[tuple[int, int], Vec4]:
    """Translation direction from metatile i to an adjacent metatile j.

    Every pair of adjacent metatiles is crossed by exactly one junction
    line: a duplicated pair split between them, or a half-turn pair.
    """
    ix = _index(patch)
    out: dict[tuple[int, int], Vec4] = {}

    def add(i, j, t):
        for p in ix.owner[i]:
            for q in ix.owner[j]:
                if p == q:
                    continue
                for key, v in (((p, q), t), ((q, p), -t)):
                    if out.setdefault(key, v) != v:
                        raise JunctionError(f"metatiles {key} linked in two directions")

    for a, b in duplicate_pairs(ix):
        add(ix.pos[a], ix.pos[b], b.anchor - a.anchor)
    for g in green_lines(ix):
        add(ix.pos[g.pair[0]], ix.pos[g.pair[1]], g.translation)
    return out


def metatile_adjacency(patch) -> dict[int, set[int]]:
    """Metatiles sharing at least one tile edge."""
    ix = _index(patch)
    out = defaultdict(set)
    for (a, b), i in ix.edges.items():
        j = ix.edges.get((b, a))
        if j is None:
            continue
        for p in ix.owner[i]:
            for q in ix.owner[j]:
                if p != q:
                    out[p].add(q)
    return dict(out)


# ---------------------------------------------------------------------------
# junction points


@dataclass(frozen=True)
class JunctionPoint:
    position: Vec4
    kind: str  # "type1" or "type2"
    triple: tuple[int, int, int]
    config: str
    metatiles: tuple[int, ...]


def classify_junction(incident: list[tuple[PlacedMonotile, int]]) -> tuple[str, str]:
    """Kind and configuration id from the (tile, vertex index) pairs at a point."""
    if len(incident) != 3:
        raise JunctionError(f"{len(incident)} tiles meet at a junction")
    orients = sorted(t.orient for t, _ in incident)
    counts = Counter(orients)
    if len(counts) == 2:
        x = next(k for k, c in counts.items() if c == 2)
        y = next(k for k, c in counts.items() if c == 1)
        ks = sorted(k for t, k in incident if t.orient == x)
        ky = [k for t, k in incident if t.orient == y]
        if x % 2 == 0 and ks == [0, LONG_EDGE_MID] and (x - y) % 12 == 2 and ky == [6]:
            return "type1", f"M{x}"
    if orients in ([2, 6, 10], [4, 8, 12]):
        ks = {k for _, k in incident}
        if len(ks) == 1 and ks <= {5, 7}:
            return "type2", f"M{orients[0]}-v{ks.pop()}"
    raise JunctionError(f"unclassifiable junction {[(t.orient, k) for t, k in incident]}")


def junction_points(patch) -> list[Vec4]:
    """Lattice points where tiles of three or more metatiles meet."""
    ix = _index(patch)
    out = []
    for p, inc in ix.at_vertex.items():
        owners = {o for i, _ in inc for o in ix.owner[i]}
        if len(owners) >= 3:
            out.append(p)
    return sorted(out)


def junctions(patch) -> list[JunctionPoint]:
    ix = _index(patch)
    out = []
    for p in junction_points(ix):
        inc = ix.at_vertex[p]
        kind, config = classify_junction([(ix.tiles[i], k) for i, k in inc])
        owners = tuple(sorted({o for i, _ in inc for o in ix.owner[i]}))
        if len(owners) != 3:
            raise JunctionError(f"{len(owners)} metatiles meet at {p}")
        out.append(JunctionPoint(p, kind, tuple(sorted(ix.tiles[i].orient for i, _ in inc)), config, owners))
    return out


# ---------------------------------------------------------------------------
# coronas


def coronas(patch) -> list[tuple[PlacedMonotile, list[PlacedMonotile]]]:
    """Every interior odd tile with the tiles sharing a boundary point with it."""
    ix = _index(patch)
    out = []
    for i, t in enumerate(ix.tiles):
        if not t.is_odd or not ix.interior[i]:
            continue
        nb = {j for v in ix.verts[i] for j, _ in ix.at_vertex[v] if j != i}
        out.append((t, sorted(ix.tiles[j] for j in nb)))
    return out


# ---------------------------------------------------------------------------
# triangles and hexagon clusters


def hexagon_clusters(patch) -> list[tuple[list[PlacedMonotile], bool]]:
    """Edge-connected clusters of decoration hexagons, with an 'open' flag for border clusters."""
    ix = _index(patch)
    emap = {}
    for i, t in enumerate(ix.tiles):
        h = hexagon(t)
        for a, b in zip(h, h[1:] + h[:1]):
            emap[(a, b)] = i
    nb = defaultdict(set)
    for (a, b), i in emap.items():
        j = emap.get((b, a))
        if j is not None:
            nb[i].add(j)
    seen = set()
    out = []
    for s in range(len(ix.tiles)):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in nb[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        tiles = sorted(ix.tiles[i] for i in comp)
        out.append((tiles, not all(ix.interior[i] for i in comp)))
    out.sort(key=lambda c: c[0])
    return out


def embed_float_scaled(c) -> tuple[float, float]:
    """Plane point of scaled coordinates (X0, X1, Y0, Y1)."""
    x0, x1, y0, y1 = c
    return (float(x0) + float(x1) * _SQRT3) / 2, (float(y0) + float(y1) * _SQRT3) / 2


_SQRT3 = 3 ** 0.5


def link_triangles(patch) -> list[tuple[int, int, int]]:
    """Minimal cycles of the junction-line graph between metatiles (all of length 3)."""
    links = metatile_links(patch)
    adj = defaultdict(set)
    for i, j in links:
        adj[i].add(j)
    out = set()
    for i in adj:
        for j in adj[i]:
            if j <= i:
                continue
            for k in adj[i] & adj[j]:
                if k > j:
                    out.add((i, j, k))
    return sorted(out)


SIZE_CLASSES = {1: "small", 3: "medium", 6: "large"}


@dataclass(frozen=True)
class Triangle:
    metatiles: tuple[int, int, int]
    size: int  # hexagons in the enclosed cluster
    cls: str


def triangles(patch) -> tuple[list[Triangle], int]:
    """Junction-line triangles with the hexagon cluster each one encloses.

    A triangle joins the odd hexagon centres of three mutually adjacent
    metatiles. Each closed interior cluster of even hexagons lies inside
    exactly one triangle; a mismatch raises. Returns the triangles and the
    number of open clusters cut by the patch border.
    """
    ix = _index(patch)
    if not ix.tiles:
        return [], 0
    centre = {}
    for k, m in enumerate(ix.patch.metatiles):
        odd = next(t for t in m.monotiles() if t.is_odd)
        centre[k] = scaled_coords(hexagon_centre(odd))
    tris = link_triangles(ix)
    fc = {k: (embed_float_scaled(c)) for k, c in centre.items()}
    boxes = []
    for tr in tris:
        xs = [fc[k][0] for k in tr]
        ys = [fc[k][1] for k in tr]
        boxes.append((min(xs), max(xs), min(ys), max(ys)))
    found: dict[tuple[int, int, int], int] = {}
    n_open = 0
    for tiles, is_open in hexagon_clusters(ix):
        if all(t.is_odd for t in tiles):
            continue
        if is_open:
            n_open += 1
            continue
        n = len(tiles)
        s = [sum(c) for c in zip(*(scaled_coords(hexagon_centre(t)) for t in tiles))]
        fx, fy = embed_float_scaled(tuple(Fraction(c, n) for c in s))
        hits = [
            tr
            for tr, (x0, x1, y0, y1) in zip(tris, boxes)
            if x0 - 1e-9 <= fx <= x1 + 1e-9 and y0 - 1e-9 <= fy <= y1 + 1e-9
            and strictly_inside(tuple(s), [centre[k] for k in tr], n)
        ]
        if len(hits) != 1:
            raise JunctionError(f"hexagon cluster of size {n} lies in {len(hits)} triangles")
        if hits[0] in found:
            raise JunctionError("two hexagon clusters in one triangle")
        found[hits[0]] = n
    out = []
    for tr in tris:
        n = found.get(tr)
        if n is None:
            raise JunctionError(f"triangle {tr} encloses no hexagon cluster")
        if n not in SIZE_CLASSES:
            raise JunctionError(f"triangle encloses {n} hexagons")
        out.append(Triangle(tr, n, SIZE_CLASSES[n]))
    return out, n_open


def triangle_census(patch) -> dict:
    tris, n_open = triangles(patch)
    c = Counter(t.size for t in tris)
    return {"by_size": {str(k): c.get(k, 0) for k in sorted(SIZE_CLASSES)}, "closed": len(tris), "open": n_open}


# ---------------------------------------------------------------------------


def report(patch) -> dict:
    """JSON-ready summary: junctions, green lines and triangles."""
    ix = TileIndex(patch)
    js = junctions(ix)
    gl = green_lines(ix)
    return {
        "seed": patch.seed,
        "step": patch.step,
        "junctions": {
            "count": len(js),
            "by_config": dict(sorted(Counter(f"{j.kind}:{j.config}" for j in js).items())),
            "points": [{"position": j.position.to_list(), "kind": j.kind, "config": j.config, "triple": list(j.triple)} for j in js],
        },
        "green_lines": {
            "count": len(gl),
            "by_class": dict(sorted(Counter(g.cls for g in gl).items())),
            "lines": [{"centre": g.centre.to_list(), "class": g.cls, "translation": g.translation.to_list()} for g in gl],
        },
        "connection_lines": dict(sorted(Counter(c.cls for c in connection_lines(ix)).items())),
        "triangles": triangle_census(ix),
    }
