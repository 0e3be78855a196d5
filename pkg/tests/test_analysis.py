from __future__ import annotations

from collections import Counter

import pytest

from spectre_tiling import analysis as A
from spectre_tiling.inflation import Patch
from spectre_tiling.lattice import T1, T2, T3, TRANSLATION_CLASS, QuadNumber, ZERO, squared_length, translation_class
from spectre_tiling.shape import PlacedMonotile, vertex_vecs

TS = {T1, T2, T3, -T1, -T2, -T3}


def test_interior_angles():
    ang = A.interior_angles()
    assert len(ang) == 14 and sum(ang) == 12 * 6
    assert all(0 < a < 12 for a in ang)


def test_decoration_hexagon_regular():
    t = PlacedMonotile(1, ZERO)
    h = A.hexagon(t)
    for a, b in zip(h, h[1:] + h[:1]):
        assert squared_length(b - a) == QuadNumber.make(2, 0, 3)
    c = A.hexagon_centre(t)
    assert all(squared_length(v - c) == QuadNumber.make(2, 0, 3) for v in h)


@pytest.mark.parametrize("step", [1, 2])
def test_translation_law(indexes, step):
    ix = indexes("O1", step)
    pairs = A.duplicate_pairs(ix)
    assert pairs
    for a, b in pairs:
        assert a.orient == b.orient and a.orient % 2 == 0
        assert b.anchor - a.anchor in TS
        assert translation_class(b.anchor - a.anchor) == TRANSLATION_CLASS[a.orient]
    sizes = Counter(len(g) for g in A.duplicate_groups(ix))
    assert set(sizes) == {2, 3}


def test_connection_lines(indexes):
    ix = indexes("O1", 2)
    lines = A.connection_lines(ix)
    assert len(lines) == len(A.duplicate_pairs(ix))
    for c in lines:
        a, b = c.endpoints
        assert b - a == c.translation * 2
        assert c.translation in TS
    assert 0 < len(A.connection_lines(ix, cross_only=True)) < len(lines)


def test_glue_points_per_core(indexes):
    for seed, step in (("O1", 2), ("G1", 2), ("O1", 3)):
        ix = indexes(seed, step)
        gp = A.glue_points_by_core(ix)
        pairs = A.core_pairs(ix)
        assert len(gp) == len(ix.patch.metatiles)
        for k, pts in gp.items():
            assert len(pts) == 3 and all(g.on_border for g in pts)
            # copies present in the patch meet their core exactly at those points
            assert {A.glue_point(x, y) for x, y in pairs[k]} <= {g.position for g in pts}
        incomplete = [k for k, v in pairs.items() if len(v) < 3]
        assert len(incomplete) <= 1
        for k in incomplete:
            assert not all(ix.interior[ix.pos[t]] for t in ix.patch.metatiles[k].monotiles())
        covered = {frozenset(p) for v in pairs.values() for p in v}
        assert covered == {frozenset(p) for p in A.duplicate_pairs(ix)}


def test_green_lines(indexes):
    gl = A.green_lines(indexes("O1", 2))
    assert gl
    for g in gl:
        a, b = g.pair
        assert (a.orient - b.orient) % 12 == 6 and a.orient % 2 == 0
        assert g.cls in ("T1", "T2", "T3") and g.translation in TS
        p, q = g.endpoints
        d = q - p
        assert d.x * d.x + d.y * d.y == squared_length(g.translation)


def test_junctions_step1_are_glue_points(indexes):
    ix = indexes("O1", 1)
    js = A.junctions(ix)
    glue = {c.glue.position for c in A.connection_lines(ix)}
    assert js and all(j.kind == "type1" for j in js)
    assert {j.position for j in js} <= glue


@pytest.mark.parametrize("step", [2, 3])
def test_junction_taxonomy(indexes, step):
    ix = indexes("O1", step)
    js = A.junctions(ix)
    configs = Counter(j.config for j in js if j.kind == "type1")
    assert set(configs) == {f"M{k}" for k in range(2, 13, 2)}
    t2 = {j.config for j in js if j.kind == "type2"}
    assert t2 == {"M2-v5", "M2-v7", "M4-v5", "M4-v7"}
    for j in js:
        assert len(j.metatiles) == 3
        if j.kind == "type2":
            assert j.triple in ((2, 6, 10), (4, 8, 12))
        else:
            c = Counter(j.triple)
            assert sorted(c.values()) == [1, 2]
    glue = {c.glue.position for c in A.connection_lines(ix)}
    assert all(j.position in glue for j in js if j.kind == "type1")
    assert any(j.triple == (2, 2, 12) for j in js)


def test_unclassifiable_junction():
    t = PlacedMonotile(1, ZERO)
    with pytest.raises(A.JunctionError):
        A.classify_junction([(t, 0), (t, 1)])
    with pytest.raises(A.JunctionError):
        A.classify_junction([(PlacedMonotile(1, ZERO), 0), (PlacedMonotile(3, T1), 2), (PlacedMonotile(5, T2), 4)])


def test_coronas(indexes):
    cs = A.coronas(indexes("O1", 2))
    assert len(cs) == 63
    for t, nb in cs:
        assert len(nb) == 6 and all(n.orient % 2 == 0 for n in nb)


def test_triangles_step2(indexes):
    ix = indexes("O1", 2)
    census = A.triangle_census(ix)
    assert census["by_size"] == {"1": 8, "3": 56, "6": 18}
    tris, n_open = A.triangles(ix)
    assert {t.cls for t in tris} == {"small", "medium", "large"}
    assert sorted(t.metatiles for t in tris) == A.link_triangles(ix)
    assert n_open > 0


def test_triangles_step3(indexes):
    assert A.triangle_census(indexes("O1", 3))["by_size"] == {"1": 63, "3": 505, "6": 236}


def test_triangles_step1(indexes):
    tris, _ = A.triangles(indexes("O1", 1))
    assert tris


def test_empty_patch():
    p = Patch("O1", 0, [], [])
    assert A.triangle_census(p) == {"by_size": {"1": 0, "3": 0, "6": 0}, "closed": 0, "open": 0}
    assert A.junctions(p) == []


def test_report(indexes, patches):
    r = A.report(patches("O1", 1))
    assert {"junctions", "green_lines", "triangles", "connection_lines"} <= set(r)
    assert r["junctions"]["count"] == len(r["junctions"]["points"])


def test_interior_detection(indexes):
    ix = indexes("O1", 1)
    # every interior tile has all its vertices surrounded
    for i, ok in enumerate(ix.interior):
        if ok:
            assert all(v in ix.full_vertices for v in vertex_vecs(ix.tiles[i]))
    assert 0 < sum(ix.interior) < len(ix.tiles)
