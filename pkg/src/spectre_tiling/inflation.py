"""Homochiral substitution: supertile hierarchy, patch generation and dedup.

A level-1 supertile is a metatile. A level-(l+1) supertile is made of eight
level-l children (seven for Gamma, which drops slot 2); slot 7 is the Gamma
child and the others are Omega. Children are placed by gluing four key points
of consecutive children together, turning by a fixed list of angles whose sign
flips from one level to the next. That flip is the chirality alternation of
the triangular patterns. A step-n patch is one level-(n+1) supertile.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .census import geometric_metatile_counts, inflate2, seed_index
from .clusters import LEVEL1_KEYS, metatile
from .lattice import T1, T2, T3, QuadNumber, Vec4, ZERO, embed_exact, rotate
from .shape import PlacedMonotile

DEFAULT_CAP = 10**7

# (turn in 30 degree units, key point of the previous child, key point of the next child)
GLUE_RULES = ((2, 3, 1), (0, 2, 0), (2, 3, 1), (2, 3, 1), (0, 2, 0), (2, 3, 1), (-4, 3, 3))
GAMMA_SLOT = 7
GAMMA_MISSING = 2


class CapExceeded(RuntimeError):
    pass


class CoincidenceError(ValueError):
    pass


@dataclass(frozen=True)
class Frame:
    """Rigid motion p -> rotate(p, rot) + shift."""

    rot: int
    shift: Vec4

    def __call__(self, p: Vec4) -> Vec4:
        return rotate(p, self.rot) + self.shift

    def __mul__(self, other: Frame) -> Frame:
        return Frame((self.rot + other.rot) % 12, rotate(other.shift, self.rot) + self.shift)


IDENTITY = Frame(0, ZERO)


def turn(r: int) -> Frame:
    return Frame(r % 12, ZERO)


def shift(v: Vec4) -> Frame:
    return Frame(0, v)


def glue_sign(level: int) -> int:
    """Turning sign used to build level+1 from level."""
    return 1 if level % 2 == 0 else -1


def children_frames(keys, sign: int):
    """Frames of the 8 child slots and the key points of the parent."""
    ts = [IDENTITY]
    total = 0
    for ang, f, t in GLUE_RULES:
        total += sign * ang
        r = turn(total)
        ts.append(shift(ts[-1](keys[f]) - r(keys[t])) * r)
    cs = [turn(6) * t for t in ts]
    parent = (cs[6](keys[2]), cs[5](keys[1]), cs[3](keys[2]), cs[0](keys[1]))
    return tuple(cs), parent


@lru_cache(maxsize=None)
def level_data(level: int):
    """(child frames used to build ``level``, key points of ``level``)."""
    if level < 1:
        raise ValueError("levels start at 1")
    if level == 1:
        return None, LEVEL1_KEYS
    _, keys = level_data(level - 1)
    return children_frames(keys, glue_sign(level - 1))


@lru_cache(maxsize=None)
def label_turn(level: int) -> int:
    """Rotation reached by following Gamma children from a level-``level`` node down to a metatile."""
    r = 0
    for lv in range(level, 1, -1):
        r += level_data(lv)[0][GAMMA_SLOT].rot
    return r % 12


def slots(kind: str) -> list[int]:
    return [j for j in range(8) if not (kind == "G" and j == GAMMA_MISSING)]


def child_kind(slot: int) -> str:
    return "G" if slot == GAMMA_SLOT else "O"


def node_label(kind: str, level: int, rot: int) -> tuple[str, int]:
    """Label of a supertile of ``level`` whose frame rotation is ``rot``."""
    r = (rot + label_turn(level)) % 12
    if r % 2:
        raise ValueError("odd frame rotation")
    return kind, r // 2 + 1


def parse_label(label) -> tuple[str, int]:
    if isinstance(label, tuple):
        kind, i = label
        label = f"{kind}{i}"
    idx = seed_index(str(label))
    return ("G" if idx < 6 else "O"), idx % 6 + 1


def label_str(kind: str, i: int) -> str:
    return f"{kind}{i}"


@dataclass(frozen=True)
class PlacedMetatile:
    kind: str
    orient: int
    anchor: Vec4
    path: tuple[int, ...] = ()
    node: tuple[int, int] | None = None

    @property
    def label(self) -> str:
        return label_str(self.kind, self.orient)

    @property
    def rot(self) -> int:
        return 2 * (self.orient - 1)

    def monotiles(self) -> list[PlacedMonotile]:
        spec = metatile(self.kind, 1)
        r = self.rot
        return [PlacedMonotile((m.orient - 1 + r) % 12 + 1, self.anchor + m.offset.rotate(r)) for m in spec.members]

    def to_json(self) -> dict:
        d = {"label": self.label, "anchor": self.anchor.to_list(), "path": list(self.path)}
        if self.node is not None:
            d["node"] = list(self.node)
        return d


@dataclass(frozen=True)
class ChiralityPhase:
    steps: int

    @property
    def parity(self) -> str:
        return "even" if self.steps % 2 == 0 else "odd"


@dataclass
class Patch:
    seed: str
    step: int
    metatiles: list[PlacedMetatile]
    monotiles: list[PlacedMonotile]
    owners: dict = field(default_factory=dict)  # monotile -> tuple of metatile indices
    trimap: dict | None = None

    @property
    def phase(self) -> ChiralityPhase:
        return ChiralityPhase(self.step)

    def label_counts(self) -> list[int]:
        v = [0] * 12
        for m in self.metatiles:
            v[seed_index(m.label)] += 1
        return v

    def orientation_counts(self) -> list[int]:
        v = [0] * 12
        for m in self.monotiles:
            v[m.orient - 1] += 1
        return v

    def to_json(self) -> dict:
        tm = self.trimap if self.trimap is not None else {}
        return {
            "seed": self.seed,
            "step": self.step,
            "metatiles": [m.to_json() for m in self.metatiles],
            "monotiles": [m.to_json() for m in self.monotiles],
            "trimap": [{"node": list(k), "label": v} for k, v in sorted(tm.items())],
        }

    def dumps(self) -> str:
        return dumps(self.to_json())

    def digest(self) -> str:
        return hashlib.sha256(self.dumps().encode()).hexdigest()[:16]


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, compact separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def predicted_monotiles(seed: str, step: int) -> int:
    kind, _ = parse_label(seed)
    g, o = inflate2((1, 0) if kind == "G" else (0, 1), step)
    return 8 * g + 9 * o


def resolve_cap(cap: int | None) -> int:
    env = os.environ.get("SPECTRE_CAP")
    if env:
        return int(env)
    return DEFAULT_CAP if cap is None else int(cap)


def _expand(kind: str, level: int, frame: Frame, path: tuple, out: list) -> None:
    if level == 1:
        out.append((kind, frame, path))
        return
    cs = level_data(level)[0]
    for j in slots(kind):
        _expand(child_kind(j), level - 1, frame * cs[j], path + (j,), out)


def _same_label_path(kind: str, level: int, top: Frame) -> Frame:
    """Frame of the metatile reached by always stepping into the child with the parent's label."""
    frame = top
    lab = node_label(kind, level, frame.rot)
    while level > 1:
        cs = level_data(level)[0]
        nxt = None
        for j in slots(lab[0]):
            f = frame * cs[j]
            if node_label(child_kind(j), level - 1, f.rot) == lab:
                nxt = f
                break
        if nxt is None:
            raise RuntimeError("no child carries the parent label")
        frame = nxt
        level -= 1
    return frame


def metatile_frames(seed, step: int) -> list[tuple[str, Frame, tuple]]:
    """(kind, frame, path) of every metatile of the normalised step-``step`` patch."""
    if step < 0:
        raise ValueError("step must be >= 0")
    kind, i = parse_label(seed)
    level = step + 1
    rot = (2 * (i - 1) - label_turn(level)) % 12
    top = turn(rot)
    anchor = _same_label_path(kind, level, top).shift
    top = shift(-anchor) * top
    out: list = []
    _expand(kind, level, top, (), out)
    return out


def generate(seed="O1", step: int = 0, cap: int | None = None, with_trimap: bool = True) -> Patch:
    """Step-``step`` patch grown from ``seed``, with the seed's own metatile at the origin."""
    kind, i = parse_label(seed)
    seed = label_str(kind, i)
    limit = resolve_cap(cap)
    need = predicted_monotiles(seed, step)
    if need > limit:
        raise CapExceeded(f"step {step} from {seed} needs {need} monotiles, cap is {limit}")
    mets = []
    for k, fr, path in metatile_frames(seed, step):
        _, ii = node_label(k, 1, fr.rot)
        mets.append(PlacedMetatile(k, ii, fr.shift, path))
    patch = Patch(seed, step, mets, [])
    resolve(patch)
    if with_trimap:
        tm = tri_map(patch)
        patch.trimap = tm.labels
        patch.metatiles = [
            PlacedMetatile(m.kind, m.orient, m.anchor, m.path, tm.nodes.get(ix)) for ix, m in enumerate(patch.metatiles)
        ]
    return patch


def inflate(patch: Patch, n: int = 1, cap: int | None = None) -> Patch:
    """The patch ``n`` steps further; nesting makes this a superset of ``patch``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return generate(patch.seed, patch.step + n, cap=cap, with_trimap=patch.trimap is not None)


# axial unit steps on the triangular lattice for the six junction-line directions
AXIAL = {T2: (1, 0), T3: (0, 1), T1: (-1, 1), -T2: (-1, 0), -T3: (0, -1), -T1: (1, -1)}


class NodeCollision(ValueError):
    pass


@dataclass
class TriMap:
    nodes: dict  # metatile index -> (p, q)
    labels: dict  # (p, q) -> label, or "?i" for undetermined border nodes
    border: frozenset  # nodes with fewer than six occupied neighbours

    def neighbours(self, node) -> list:
        p, q = node
        return [(p + a, q + b) for a, b in AXIAL.values() if (p + a, q + b) in self.labels]


def tri_map(patch: Patch, undetermined_border: bool = False) -> TriMap:
    """Place every metatile on a node of the triangular lattice.

    Adjacent metatiles are joined by a junction line along one of the six
    directions +-T1, +-T2, +-T3, which fixes the unit step between their
    nodes. The metatile at the origin goes to node (0, 0). Conflicting steps
    or two metatiles on one node raise NodeCollision. With
    ``undetermined_border`` the labels of border nodes keep only their
    orientation, written "?i".
    """
    from .analysis import metatile_links

    links = metatile_links(patch)
    if not patch.metatiles:
        return TriMap({}, {}, frozenset())
    adj: dict = {}
    for (i, j), t in sorted(links.items()):
        if t not in AXIAL:
            raise NodeCollision(f"link direction {t} is not a junction translation")
        adj.setdefault(i, []).append((j, AXIAL[t]))
    start = next((k for k, m in enumerate(patch.metatiles) if m.anchor == ZERO), 0)
    nodes = {start: (0, 0)}
    queue = [start]
    while queue:
        i = queue.pop(0)
        p, q = nodes[i]
        for j, (a, b) in adj.get(i, ()):
            want = (p + a, q + b)
            have = nodes.get(j)
            if have is None:
                nodes[j] = want
                queue.append(j)
            elif have != want:
                raise NodeCollision(f"metatile {j} placed at {have} and {want}")
    if len(nodes) != len(patch.metatiles):
        raise NodeCollision("junction-line graph is disconnected")
    if len(set(nodes.values())) != len(nodes):
        raise NodeCollision("two metatiles share a node")
    occupied = set(nodes.values())
    border = frozenset(
        n for n in occupied if sum((n[0] + a, n[1] + b) in occupied for a, b in AXIAL.values()) < 6
    )
    labels = {}
    for k, n in nodes.items():
        m = patch.metatiles[k]
        labels[n] = f"?{m.orient}" if (undetermined_border and n in border) else m.label
    return TriMap(nodes, labels, border)


def resolve(patch: Patch) -> list[PlacedMonotile]:
    """Merge member tiles of all metatiles by (orientation, anchor).

    Two tiles at one anchor with different orientations mean a broken table
    and raise CoincidenceError.
    """
    by_anchor: dict[Vec4, int] = {}
    owners: dict[PlacedMonotile, list[int]] = {}
    for ix, m in enumerate(patch.metatiles):
        for t in m.monotiles():
            prev = by_anchor.get(t.anchor)
            if prev is not None and prev != t.orient:
                raise CoincidenceError(f"M{prev} and M{t.orient} both anchored at {t.anchor}")
            by_anchor[t.anchor] = t.orient
            owners.setdefault(t, []).append(ix)
    patch.monotiles = sorted(owners)
    patch.owners = {t: tuple(v) for t, v in owners.items()}
    return patch.monotiles


def substitute(label, depth: int = 1) -> list[tuple[str, tuple[int, int] | None, Vec4]]:
    """Children of a supertile as (label, trimap node, anchor offset).

    The child carrying the parent's own label sits at the origin. At depth 1
    the children are metatiles.
    """
    patch = generate(label, depth)
    return [(m.label, m.node, m.anchor) for m in patch.metatiles]


def expected_label_counts(seed: str, step: int) -> list[int]:
    return geometric_metatile_counts(parse_label_str(seed), step)


def parse_label_str(seed) -> str:
    return label_str(*parse_label(seed))


# ---------------------------------------------------------------------------
# chirality of the triangular pattern


def _child_centroids(kind: str, level: int, top: Frame) -> list[tuple[Fraction, ...]]:
    pts = []
    if level == 1:
        spec = metatile(kind, 1)
        groups: dict[int, list[Vec4]] = {}
        for m in spec.members:
            groups.setdefault(m.slot, []).append(top(m.offset))
        items = [groups[j] for j in sorted(groups)]
    else:
        cs = level_data(level)[0]
        items = []
        for j in slots(kind):
            out: list = []
            _expand(child_kind(j), level - 1, top * cs[j], (), out)
            items.append([fr.shift for _, fr, _ in out])
    for anchors in items:
        n = len(anchors)
        s = [sum(c) for c in zip(*(tuple(a) for a in anchors))]
        pts.append(tuple(Fraction(x, n) for x in s))
    return pts


def _signed_area(pts) -> QuadNumber:
    acc = QuadNumber(Fraction(0), Fraction(0), 3)
    ex = []
    for c in pts:
        # embed a rational 4-vector exactly: x = c1 + c3/2 + c2*sqrt3/2, y = c2/2 + c4 + c3*sqrt3/2
        x = QuadNumber(c[0] + c[2] / 2, c[1] / 2, 3)
        y = QuadNumber(c[1] / 2 + c[3], c[2] / 2, 3)
        ex.append((x, y))
    n = len(ex)
    for k in range(n):
        x0, y0 = ex[k]
        x1, y1 = ex[(k + 1) % n]
        acc = acc + (x0 * y1 - x1 * y0)
    return acc * Fraction(1, 2)


def pattern_sign(seed, step: int) -> int:
    """Orientation sign of the loop through the children of the top supertile, in slot order."""
    kind, i = parse_label(seed)
    level = step + 1
    top = turn((2 * (i - 1) - label_turn(level)) % 12)
    return _signed_area(_child_centroids(kind, level, top)).sign()


def pattern_chirality(patch_or_step, seed="O1") -> str:
    """'same' or 'opposite' relative to the metatile-level triangular pattern."""
    if isinstance(patch_or_step, Patch):
        seed, step = patch_or_step.seed, patch_or_step.step
    else:
        step = int(patch_or_step)
    return "same" if pattern_sign(seed, step) == pattern_sign(seed, 0) else "opposite"


def expected_chirality(step: int) -> str:
    return "same" if step % 2 == 0 else "opposite"


def from_json(d: dict) -> Patch:
    mets = []
    for m in d["metatiles"]:
        kind, i = parse_label(m["label"])
        node = tuple(m["node"]) if m.get("node") is not None else None
        mets.append(PlacedMetatile(kind, i, Vec4.of(m["anchor"]), tuple(m.get("path", ())), node))
    patch = Patch(d["seed"], int(d["step"]), mets, [])
    resolve(patch)
    stored = sorted(PlacedMonotile.from_json(t) for t in d.get("monotiles", []))
    if stored and stored != patch.monotiles:
        raise CoincidenceError("stored monotiles disagree with the metatiles")
    if d.get("trimap"):
        patch.trimap = {tuple(e["node"]): e["label"] for e in d["trimap"]}
    return patch


def loads(text: str) -> Patch:
    return from_json(json.loads(text))


def embed_anchor(m: PlacedMetatile):
    return embed_exact(m.anchor)
