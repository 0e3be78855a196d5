from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from spectre_tiling.lattice import (
    ROT30,
    T1,
    T2,
    T3,
    EdgeParams,
    QuadNumber,
    UnitDir,
    Vec4,
    ZERO,
    embed_exact,
    embed_float,
    mirror_x,
    quad_sign,
    rotate30,
    squared_length,
    unit_vec4,
)

ints = st.integers(-50, 50)
vecs = st.builds(Vec4, ints, ints, ints, ints)


def test_unit_vectors_listed():
    assert unit_vec4(1) == Vec4(1, 0, 0, 0)
    assert unit_vec4(5) == Vec4(-1, 0, 1, 0)
    assert unit_vec4(7) == Vec4(-1, 0, 0, 0)
    assert [unit_vec4(k) for k in (2, 3, 4)] == [Vec4(0, 1, 0, 0), Vec4(0, 0, 1, 0), Vec4(0, 0, 0, 1)]


@pytest.mark.parametrize("k", [0, 13, -1])
def test_unit_vec4_range(k):
    with pytest.raises(ValueError):
        unit_vec4(k)


def test_unit_vectors_opposite_and_angles():
    for k in range(1, 13):
        assert unit_vec4((k + 5) % 12 + 1) == -unit_vec4(k)
        x, y = embed_float(unit_vec4(k))
        a = (k - 1) * math.pi / 6
        assert math.isclose(x, math.cos(a), abs_tol=1e-12)
        assert math.isclose(y, math.sin(a), abs_tol=1e-12)
        assert UnitDir(k).parity == ("odd" if k % 2 else "even")


def test_rotate30_examples():
    assert rotate30(Vec4(1, 0, 0, 0)) == Vec4(0, 1, 0, 0)
    assert rotate30(Vec4(0, 0, 0, 1)) == Vec4(-1, 0, 1, 0)
    for k in range(1, 13):
        assert rotate30(unit_vec4(k)) == unit_vec4(k % 12 + 1)


def _det(m):
    if len(m) == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * _det([r[:j] + r[j + 1 :] for r in m[1:]]) for j in range(len(m)))


def test_rotation_matrix_unimodular():
    assert _det([list(r) for r in ROT30]) == 1


@given(vecs)
def test_rotate30_order_12(v):
    w = v
    for _ in range(12):
        w = rotate30(w)
    assert w == v
    assert v.rotate(12) == v and v.rotate(-1) == v.rotate(11)


@given(vecs, vecs, st.integers(-5, 5))
def test_rotate_linear(u, v, k):
    assert rotate30(u + v) == rotate30(u) + rotate30(v)
    assert rotate30(u * k) == rotate30(u) * k


def test_translations():
    assert T1 == Vec4(-2, 1, 1, 1) and T2 == Vec4(1, 1, 1, -2) and T3 == Vec4(-1, 2, 2, -1)
    assert T1 + T2 == T3
    assert T1.rotate(2) == -T2
    assert T2.rotate(2) == T3
    assert T3.rotate(2) == T1
    for t in (T1, T2, T3):
        assert squared_length(t) == QuadNumber.make(6, 0, 3)


def test_embed_t1_exact():
    p = embed_exact(T1)
    assert p.x == QuadNumber.make(-1.5, 0.5, 3)
    assert p.y == QuadNumber.make(1.5, 0.5, 3)
    x, y = embed_float(T1)
    assert math.isclose(x, (math.sqrt(3) - 3) / 2) and math.isclose(y, (3 + math.sqrt(3)) / 2)


def test_embed_basis():
    p = embed_exact(Vec4(1, 0, 0, 0))
    assert (float(p.x), float(p.y)) == (1.0, 0.0)
    assert embed_exact(ZERO).to_float() == (0.0, 0.0)


@given(vecs, vecs)
def test_embed_linear(u, v):
    a, b, c = embed_exact(u), embed_exact(v), embed_exact(u + v)
    assert a + b == c
    fa, fb = embed_float(u, EdgeParams(0.7, 1.3)), embed_float(v, EdgeParams(0.7, 1.3))
    fc = embed_float(u + v, EdgeParams(0.7, 1.3))
    assert math.isclose(fa[0] + fb[0], fc[0], abs_tol=1e-9) and math.isclose(fa[1] + fb[1], fc[1], abs_tol=1e-9)


@given(vecs)
def test_exact_and_float_embed_agree(v):
    x, y = embed_float(v)
    p = embed_exact(v)
    assert math.isclose(float(p.x), x, abs_tol=1e-9) and math.isclose(float(p.y), y, abs_tol=1e-9)


@given(vecs)
def test_mirror_is_reflection(v):
    x, y = embed_float(v)
    mx, my = embed_float(mirror_x(v))
    assert math.isclose(mx, x, abs_tol=1e-9) and math.isclose(my, -y, abs_tol=1e-9)
    assert mirror_x(mirror_x(v)) == v


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_quad_sign_matches_float(a, b):
    val = a + b * math.sqrt(3)
    s = quad_sign(a, b, 3)
    if abs(val) > 1e-6:
        assert s == (1 if val > 0 else -1)
    if a == 0 and b == 0:
        assert s == 0


def test_quad_arithmetic():
    x = QuadNumber.make(1, 1, 3)
    assert x * x.conjugate() == QuadNumber.make(-2, 0, 3)
    assert x / x == QuadNumber.make(1, 0, 3)
    assert x > 2 and x < 3


def test_edge_params():
    assert EdgeParams.parse("1,0") == EdgeParams(1.0, 0.0)
    with pytest.raises(ValueError):
        EdgeParams(0, 0)
    with pytest.raises(ValueError):
        EdgeParams.parse("1")
    assert Vec4.of([1, 2, 3, 4]).to_list() == [1, 2, 3, 4]
