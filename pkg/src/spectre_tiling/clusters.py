"""C, Gamma and Omega clusters: frozen member tables, coronas and glue points.

Tables are stored for orientation 1 in the frame of the odd centre tile
(anchor at the origin, orientation M1); the other five orientations follow
by rotating offsets by 60 degrees and shifting orientations by 2.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from .lattice import T1, T2, T3, TRANSLATION_CLASS, Vec4, ZERO, translation_class
from .shape import LONG_EDGE_MID, PlacedMonotile, vertex_vecs

KINDS = ("G", "O")
KIND_NAMES = {"G": "Gamma", "O": "Omega"}

# (slot, offset, orientation) in the order children are produced by the
# substitution; slot 7 holds the odd centre together with one corona tile
_OMEGA1 = (
    (0, Vec4(2, 0, -1, 0), 8),
    (1, Vec4(2, 1, -1, 1), 10),
    (2, Vec4(3, 2, 0, -1), 10),
    (3, Vec4(3, 1, 0, 1), 12),
    (4, Vec4(3, -1, 0, 2), 2),
    (5, Vec4(1, 0, 1, 3), 2),
    (6, Vec4(1, -1, 1, 2), 4),
    (7, Vec4(1, -3, -2, 3), 12),
    (7, ZERO, 1),
)
# Gamma lacks slot 2, the second orphan
_GAMMA1 = tuple(m for m in _OMEGA1 if m[0] != 2)

# even members outside the corona
_ORPHANS = {"G": (Vec4(1, 0, 1, 3),), "O": (Vec4(1, 0, 1, 3), Vec4(3, 2, 0, -1))}

# duplicated corona tiles: (offset, orientation, translation to the partner copy)
_DUPLICATED = (
    (Vec4(3, -1, 0, 2), 2, T1),
    (Vec4(2, 1, -1, 1), 10, T2),
    (Vec4(1, -3, -2, 3), 12, -T3),
)


def _table(kind: str):
    if kind == "G":
        return _GAMMA1
    if kind == "O":
        return _OMEGA1
    raise ValueError(f"kind must be 'G' or 'O', got {kind!r}")


def _check_index(i: int) -> None:
    if not isinstance(i, int) or not 1 <= i <= 6:
        raise ValueError(f"metatile orientation must be in 1..6, got {i!r}")


def _turn(v: Vec4, orient: int, i: int) -> tuple[Vec4, int]:
    r = 2 * (i - 1)
    return v.rotate(r), (orient - 1 + r) % 12 + 1


@dataclass(frozen=True)
class Member:
    offset: Vec4
    orient: int
    slot: int
    role: str  # "centre", "corona" or "orphan"

    def placed(self, anchor: Vec4 = ZERO) -> PlacedMonotile:
        return PlacedMonotile(self.orient, anchor + self.offset)


@dataclass(frozen=True)
class MetatileSpec:
    kind: str
    orient: int
    members: tuple[Member, ...]
    border: tuple[Vec4, ...]

    @property
    def label(self) -> str:
        return f"{self.kind}{self.orient}"

    @property
    def centre(self) -> Member:
        return next(m for m in self.members if m.role == "centre")

    def orientation_counts(self) -> list[int]:
        c = Counter(m.orient for m in self.members)
        return [c.get(k, 0) for k in range(1, 13)]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "orient": self.orient,
            "members": [{"orient": m.orient, "offset": m.offset.to_list()} for m in self.members],
        }


def _members(kind: str, i: int) -> tuple[Member, ...]:
    table = _table(kind)
    orphans = _ORPHANS[kind]
    out = []
    for slot, off, k in table:
        role = "centre" if k % 2 else ("orphan" if off in orphans else "corona")
        v, kk = _turn(off, k, i)
        out.append(Member(v, kk, slot, role))
    return tuple(out)


def outline(tiles) -> list[Vec4]:
    """Boundary cycle of a union of edge-matched tiles, counterclockwise.

    Interior edges occur once in each direction and cancel; the rest chain
    into the outline. Raises if the outline is not a single simple cycle.
    """
    directed = set()
    for m in tiles:
        vs = vertex_vecs(m)
        for a, b in zip(vs, vs[1:] + vs[:1]):
            directed.add((a, b))
    boundary = [(a, b) for a, b in directed if (b, a) not in directed]
    nxt = {}
    for a, b in boundary:
        if a in nxt:
            raise ValueError("outline touches itself")
        nxt[a] = b
    start = min(nxt)
    cycle = [start]
    while True:
        v = nxt[cycle[-1]]
        if v == start:
            break
        cycle.append(v)
    if len(cycle) != len(nxt):
        raise ValueError("outline is not connected")
    return cycle


@lru_cache(maxsize=None)
def metatile(kind: str, i: int) -> MetatileSpec:
    """Frozen member table of Gamma_i ("G") or Omega_i ("O")."""
    _check_index(i)
    members = _members(kind, i)
    core = [m.placed() for m in members if m.role != "orphan"]
    return MetatileSpec(kind, i, members, tuple(outline(core)))


def all_metatiles() -> list[MetatileSpec]:
    return [metatile(k, i) for k in KINDS for i in range(1, 7)]


def c_cluster(i: int) -> list[PlacedMonotile]:
    """Odd centre M_{2i-1} plus its corona, anchored at the origin."""
    _check_index(i)
    return [m.placed() for m in _members("G", i) if m.role != "orphan"]


def corona(i: int) -> list[PlacedMonotile]:
    """The six even tiles around the centre M_{2i-1}."""
    _check_index(i)
    return [m.placed() for m in _members("G", i) if m.role == "corona"]


@dataclass(frozen=True)
class GluePoint:
    position: Vec4
    on_border: bool


@dataclass(frozen=True)
class ConnectionLine:
    """Line through two duplicated tiles x and y = x + translation.

    The glue point is the shared vertex x.v10 = y.v0; the line runs from
    x.v0 to y.v10, twice the translation long, with the glue point in the middle.
    """

    cls: str
    orient: int
    first: Vec4
    second: Vec4
    glue: GluePoint

    @property
    def translation(self) -> Vec4:
        return self.second - self.first

    @property
    def endpoints(self) -> tuple[Vec4, Vec4]:
        return self.glue.position - self.translation, self.glue.position + self.translation


def glue_point(x: PlacedMonotile, y: PlacedMonotile) -> Vec4:
    """Shared vertex of a duplicated pair, given in either order."""
    vx, vy = vertex_vecs(x), vertex_vecs(y)
    if vx[LONG_EDGE_MID] == vy[0]:
        return vx[LONG_EDGE_MID]
    if vy[LONG_EDGE_MID] == vx[0]:
        return vy[LONG_EDGE_MID]
    raise ValueError("tiles are not a duplicated pair")


def ordered_pair(x: PlacedMonotile, y: PlacedMonotile) -> tuple[PlacedMonotile, PlacedMonotile]:
    """Order a duplicated pair so that first.v10 = second.v0."""
    if vertex_vecs(x)[LONG_EDGE_MID] == vertex_vecs(y)[0]:
        return x, y
    return y, x


def connection_line(x: PlacedMonotile, y: PlacedMonotile, border=frozenset()) -> ConnectionLine:
    if x.orient != y.orient or x.is_odd:
        raise ValueError("connection lines join two even tiles of equal orientation")
    a, b = ordered_pair(x, y)
    cls = translation_class(b.anchor - a.anchor)
    if cls is None or cls != TRANSLATION_CLASS[a.orient]:
        raise ValueError(f"offset {b.anchor - a.anchor} does not match orientation M{a.orient}")
    g = glue_point(a, b)
    return ConnectionLine(cls, a.orient, a.anchor, b.anchor, GluePoint(g, g in border))


def duplicated_partners(i: int) -> list[tuple[PlacedMonotile, PlacedMonotile]]:
    """(corona tile, translated copy) for the three duplicated corona tiles of C_i."""
    _check_index(i)
    out = []
    for off, k, t in _DUPLICATED:
        v, kk = _turn(off, k, i)
        tt = t.rotate(2 * (i - 1))
        out.append((PlacedMonotile(kk, v), PlacedMonotile(kk, v + tt)))
    return out


def connection_lines(spec: MetatileSpec) -> list[ConnectionLine]:
    """The three connection lines of the C core of a metatile."""
    border = frozenset(spec.border)
    return [connection_line(x, y, border) for x, y in duplicated_partners(spec.orient)]


def key_points(i: int = 1) -> list[Vec4]:
    """Four reference points of a metatile used to glue substitution children."""
    _check_index(i)
    return [q.rotate(2 * (i - 1)) for q in LEVEL1_KEYS]


# reference points of the orientation-1 metatile (shared by Gamma and Omega)
LEVEL1_KEYS = (Vec4(-1, -1, 1, 5), Vec4(0, 3, 3, 2), Vec4(3, 4, 2, -2), Vec4(3, -3, -3, 1))
