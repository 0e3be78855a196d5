"""Deterministic SVG output of patches and their decorations."""

from __future__ import annotations

from dataclasses import dataclass, field

from .clusters import metatile
from .lattice import UNIT_PARAMS, EdgeParams, Vec4, embed_float, unit_vec4
from .shape import PlacedMonotile, vertex_vecs

LAYERS = (
    "fills",
    "parity_edges",
    "cluster_outlines",
    "decoration",
    "tri_pattern",
    "connection_lines",
    "green_lines",
    "glue_points",
    "junction_points",
    "tri_map",
)
DEFAULT_LAYERS = frozenset({"fills", "parity_edges"})

# odd orientations M1, M3, ..., M11: white, four grays, black
ODD_COLORS = ("#ffffff", "#cccccc", "#999999", "#666666", "#333333", "#000000")
# even orientations M2, M4, ..., M12: green at falling lightness
EVEN_COLORS = ("#c6ecc6", "#9fdf9f", "#79d279", "#53c653", "#39ac39", "#2d862d")
DEFAULT_PALETTE = tuple(ODD_COLORS[k // 2] if k % 2 == 0 else EVEN_COLORS[k // 2] for k in range(12))

ODD_EDGE = "#c0392b"
EVEN_EDGE = "#2471a3"
GLUE_COLOR = "#ffd700"
TYPE1_COLOR = "#00008b"
TYPE2_COLOR = "#c71585"
LINE_COLOR = "#e67e22"
GREEN_LINE_COLOR = "#008000"
HEXAGON_COLOR = "#f4a6c6"
SQUARE_COLOR = "#a6c8f4"
RHOMBUS_COLOR = "#f4e3a6"
TRIANGLE_COLORS = {1: "#fde0dd", 3: "#fa9fb5", 6: "#c51b8a"}

# decoration rhombus of the tile in orientation M1, anchor at the origin
_RHOMBUS = (Vec4(0, -1, 1, 2), Vec4(0, 0, 0, 1), Vec4(1, 0, 0, 0), Vec4(1, -1, 1, 1))
# square centres (vertex index) and the unit direction of their first corner
_SQUARES_ODD = ((10, 0), (2, 1), (6, 2))
_SQUARES_EVEN = ((10, 0),)


class UnknownLayer(ValueError):
    pass


@dataclass(frozen=True)
class RenderOptions:
    layers: frozenset = DEFAULT_LAYERS
    palette: tuple = DEFAULT_PALETTE
    mirror: bool = False
    params: EdgeParams = UNIT_PARAMS

    def __post_init__(self):
        bad = sorted(set(self.layers) - set(LAYERS))
        if bad:
            raise UnknownLayer(f"unknown layer(s): {', '.join(bad)}")
        if len(self.palette) != 12:
            raise ValueError("palette needs 12 colors")

    @classmethod
    def parse_layers(cls, text: str, **kw) -> RenderOptions:
        names = frozenset(s.strip() for s in text.split(",") if s.strip())
        if "all" in names:
            names = frozenset(LAYERS)
        return cls(layers=names, **kw)


@dataclass(frozen=True)
class Decoration:
    hexagon: tuple[Vec4, ...]
    rhombus: tuple[Vec4, ...]
    squares: tuple[tuple[Vec4, ...], ...] = field(default=())


def _square(centre: Vec4, k: int) -> tuple[Vec4, ...]:
    return tuple(centre + unit_vec4((k + 3 * q - 1) % 12 + 1) for q in range(4))


def decoration(m: PlacedMonotile) -> Decoration:
    """Hexagon, thin rhombus and squares of a left-handed tile.

    Every square is centred on a tile vertex: one at v10 for each tile and
    two more at v2 and v6 for odd tiles. Square edges have length sqrt2 and
    run at 15 degrees to the tile edges.
    """
    if m.chirality != "left":
        raise ValueError("decoration is defined for left-handed tiles")
    from .analysis import hexagon

    vs = vertex_vecs(m)
    r = m.orient - 1
    rh = tuple(m.anchor + v.rotate(r) for v in _RHOMBUS)
    sq = tuple(_square(vs[j], m.orient + d) for j, d in (_SQUARES_ODD if m.is_odd else _SQUARES_EVEN))
    return Decoration(tuple(hexagon(m)), rh, sq)


# ---------------------------------------------------------------------------
# drawing


def _num(x: float) -> str:
    s = f"{x:.9f}"
    return "0.000000000" if s == "-0.000000000" else s


class _Canvas:
    def __init__(self, options: RenderOptions):
        self.o = options
        self.sx = -1.0 if options.mirror else 1.0

    def xy(self, v: Vec4, div: int = 1) -> tuple[float, float]:
        x, y = embed_float(v, self.o.params)
        # svg y runs down, so flip it to keep the tiling counterclockwise on screen
        return self.sx * x / div, -y / div

    def pts(self, vs, div: int = 1) -> str:
        return " ".join(f"{_num(a)},{_num(b)}" for a, b in (self.xy(v, div) for v in vs))

    def path(self, vs, **attrs) -> str:
        d = "M" + " L".join(self.pts([v]) for v in vs) + " Z"
        return f'<path d="{d}"{_attrs(attrs)}/>'

    def line(self, a: Vec4, b: Vec4, div: int = 1, **attrs) -> str:
        (x1, y1), (x2, y2) = self.xy(a, div), self.xy(b, div)
        return f'<line x1="{_num(x1)}" y1="{_num(y1)}" x2="{_num(x2)}" y2="{_num(y2)}"{_attrs(attrs)}/>'

    def dot(self, v: Vec4, r: float, fill: str, div: int = 1) -> str:
        x, y = self.xy(v, div)
        return f'<circle cx="{_num(x)}" cy="{_num(y)}" r="{_num(r)}" fill="{fill}"/>'


def _attrs(attrs: dict) -> str:
    return "".join(f' {k.replace("_", "-")}="{v}"' for k, v in attrs.items())


def _fills(patch, cv, ix):
    pal = cv.o.palette
    return [cv.path(vertex_vecs(t), fill=pal[t.orient - 1], stroke="none") for t in patch.monotiles]


def _parity_edges(patch, cv, ix):
    seen = {}
    for t in patch.monotiles:
        vs = vertex_vecs(t)
        for a, b in zip(vs, vs[1:] + vs[:1]):
            key = (a, b) if a < b else (b, a)
            if key not in seen:
                d = b - a
                odd = next(k for k in range(1, 13) if unit_vec4(k) == d) % 2 == 1
                seen[key] = odd
    out = []
    for (a, b), odd in sorted(seen.items()):
        out.append(cv.line(a, b, stroke=ODD_EDGE if odd else EVEN_EDGE, stroke_width="0.06"))
    return out


def _cluster_outlines(patch, cv, ix):
    out = []
    for m in patch.metatiles:
        border = [m.anchor + v for v in metatile(m.kind, m.orient).border]
        out.append(cv.path(border, fill="none", stroke="#000000", stroke_width="0.12"))
    return out


def _decoration(patch, cv, ix):
    hexes, rhombi, squares = [], [], {}
    for t in patch.monotiles:
        d = decoration(t)
        hexes.append(cv.path(d.hexagon, fill=HEXAGON_COLOR, stroke="#000000", stroke_width="0.03"))
        rhombi.append(cv.path(d.rhombus, fill=RHOMBUS_COLOR, stroke="#000000", stroke_width="0.03"))
        for s in d.squares:
            squares.setdefault(frozenset(s), s)
    sq = [cv.path(s, fill=SQUARE_COLOR, stroke="#000000", stroke_width="0.03") for _, s in sorted(squares.items(), key=lambda kv: sorted(kv[0]))]
    return hexes + rhombi + sq


def _connection_lines(patch, cv, ix):
    from .analysis import connection_lines

    out = []
    for c in connection_lines(ix):
        a, b = c.endpoints
        out.append(cv.line(a, b, stroke=LINE_COLOR, stroke_width="0.1"))
    return out


def _green_lines(patch, cv, ix):
    from .analysis import green_lines

    out = []
    for g in green_lines(ix):
        c2 = g.centre * 2
        out.append(cv.line(c2 - g.translation, c2 + g.translation, div=2, stroke=GREEN_LINE_COLOR, stroke_width="0.1"))
    return out


def _glue_points(patch, cv, ix):
    from .analysis import connection_lines

    pts = sorted({c.glue.position for c in connection_lines(ix)})
    return [cv.dot(p, 0.35, GLUE_COLOR) for p in pts]


def _junction_points(patch, cv, ix):
    from .analysis import junctions

    return [cv.dot(j.position, 0.22, TYPE1_COLOR if j.kind == "type1" else TYPE2_COLOR) for j in junctions(ix)]


def _centres(patch):
    from .analysis import hexagon_centre

    return [hexagon_centre(next(t for t in m.monotiles() if t.is_odd)) for m in patch.metatiles]


def _tri_pattern(patch, cv, ix):
    from .analysis import triangles

    c = _centres(patch)
    tris, _ = triangles(ix)
    return [cv.path([c[k] for k in t.metatiles], fill=TRIANGLE_COLORS[t.size], stroke="#000000", stroke_width="0.05", fill_opacity="0.6") for t in tris]


def _tri_map(patch, cv, ix):
    from .analysis import metatile_links

    c = _centres(patch)
    out = []
    for (i, j) in sorted(metatile_links(ix)):
        if i < j:
            out.append(cv.line(c[i], c[j], stroke="#444444", stroke_width="0.08"))
    for k, m in enumerate(patch.metatiles):
        x, y = cv.xy(c[k])
        out.append(cv.dot(c[k], 0.3, "#444444"))
        out.append(f'<text x="{_num(x)}" y="{_num(y - 0.5)}" font-size="1.2" text-anchor="middle">{m.label}</text>')
    return out


_DRAW = {
    "fills": _fills,
    "parity_edges": _parity_edges,
    "cluster_outlines": _cluster_outlines,
    "decoration": _decoration,
    "tri_pattern": _tri_pattern,
    "connection_lines": _connection_lines,
    "green_lines": _green_lines,
    "glue_points": _glue_points,
    "junction_points": _junction_points,
    "tri_map": _tri_map,
}
_NEEDS_INDEX = {"connection_lines", "green_lines", "glue_points", "junction_points", "tri_pattern", "tri_map"}


def render_svg(patch, options: RenderOptions | None = None) -> bytes:
    """SVG 1.1 document with one group per enabled layer, in a fixed order."""
    o = options or RenderOptions()
    bad = sorted(set(o.layers) - set(LAYERS))
    if bad:
        raise UnknownLayer(f"unknown layer(s): {', '.join(bad)}")
    cv = _Canvas(o)
    ix = None
    if _NEEDS_INDEX & set(o.layers):
        from .analysis import TileIndex

        ix = TileIndex(patch)
    xs, ys = [], []
    for t in patch.monotiles:
        for v in vertex_vecs(t):
            x, y = cv.xy(v)
            xs.append(x)
            ys.append(y)
    if not xs:
        xs, ys = [0.0], [0.0]
    pad = 1.0
    x0, y0 = min(xs) - pad, min(ys) - pad
    w, h = max(xs) - min(xs) + 2 * pad, max(ys) - min(ys) + 2 * pad
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{_num(x0)} {_num(y0)} {_num(w)} {_num(h)}">',
    ]
    for name in LAYERS:
        if name not in o.layers:
            continue
        lines.append(f'<g id="layer-{name}">')
        lines.extend(_DRAW[name](patch, cv, ix))
        lines.append("</g>")
    lines.append("</svg>")
    return ("\n".join(lines) + "\n").encode()
