from __future__ import annotations

from collections import Counter

import pytest

from spectre_tiling.census import M_COMPOSE
from spectre_tiling.clusters import (
    KINDS,
    all_metatiles,
    c_cluster,
    connection_lines,
    corona,
    duplicated_partners,
    key_points,
    metatile,
    outline,
)
from spectre_tiling.lattice import T1, TRANSLATION_CLASS, translation_class
from spectre_tiling.shape import LONG_EDGE_MID, PlacedMonotile, find_overlaps, vertex_vecs


def _plus2(k: int) -> int:
    return (k + 1) % 12 + 1


def test_member_counts():
    for spec in all_metatiles():
        assert len(spec.members) == (8 if spec.kind == "G" else 9)
        assert len([m for m in spec.members if m.role != "orphan"]) == 7
    assert len(c_cluster(1)) == 7 and len(corona(1)) == 6


def test_gamma1_multiset():
    assert metatile("G", 1).orientation_counts() == [1, 2, 0, 1, 0, 0, 0, 1, 0, 1, 0, 2]


def test_omega1_is_gamma1_plus_m10():
    g = metatile("G", 1).orientation_counts()
    o = metatile("O", 1).orientation_counts()
    assert [a - b for a, b in zip(o, g)] == [0] * 9 + [1, 0, 0]


def test_multisets_match_composition_columns():
    for col, spec in enumerate(all_metatiles()):
        assert spec.orientation_counts() == [M_COMPOSE[r][col] for r in range(12)]


def test_single_odd_centre():
    for spec in all_metatiles():
        odd = [m for m in spec.members if m.orient % 2]
        assert len(odd) == 1 and odd[0].orient == 2 * spec.orient - 1 and odd[0].role == "centre"
        assert all(m.orient not in (3, 5, 6, 7, 9, 11) for m in metatile(spec.kind, 1).members)


def test_rotation_rule():
    for k in KINDS:
        for i in range(1, 6):
            a, b = metatile(k, i), metatile(k, i + 1)
            for ma, mb in zip(a.members, b.members):
                assert mb.orient == _plus2(ma.orient)
                assert mb.offset == ma.offset.rotate(2)
    for i in range(1, 6):
        turned = sorted((_plus2(m.orient), m.anchor.rotate(2)) for m in corona(i))
        assert turned == sorted((m.orient, m.anchor) for m in corona(i + 1))


def test_corona_is_even_and_gamma_minus_two():
    c = corona(1)
    assert all(m.orient % 2 == 0 for m in c)
    g = Counter(m.orient for m in metatile("G", 1).members)
    g.subtract({1: 1, 2: 1})
    assert Counter(m.orient for m in c) == +g


def test_tables_edge_matched_and_disjoint():
    for spec in all_metatiles():
        tiles = [m.placed() for m in spec.members]
        assert find_overlaps(tiles) == []
        core = [m.placed() for m in spec.members if m.role != "orphan"]
        # the core outline is one simple cycle
        assert len(outline(core)) == 42


def test_gamma1_duplicated_m2_pair():
    pairs = duplicated_partners(1)
    m2 = [(x, y) for x, y in pairs if x.orient == 2]
    assert len(m2) == 1
    x, y = m2[0]
    assert y.anchor - x.anchor in (T1, -T1)


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("i", range(1, 7))
def test_connection_lines(kind, i):
    spec = metatile(kind, i)
    lines = connection_lines(spec)
    assert len(lines) == 3
    assert sorted(c.cls for c in lines) == ["T1", "T2", "T3"]
    for c in lines:
        assert c.cls == TRANSLATION_CLASS[c.orient] == translation_class(c.translation)
        assert c.glue.on_border
        a, b = c.endpoints
        assert a + b == c.glue.position * 2
        assert vertex_vecs(PlacedMonotile(c.orient, c.first))[LONG_EDGE_MID] == c.glue.position


def test_key_points_rotate():
    assert key_points(2) == [q.rotate(2) for q in key_points(1)]
    with pytest.raises(ValueError):
        key_points(7)
    with pytest.raises(ValueError):
        metatile("X", 1)


def test_spec_json():
    d = metatile("O", 3).to_json()
    assert d["kind"] == "O" and d["orient"] == 3 and len(d["members"]) == 9
