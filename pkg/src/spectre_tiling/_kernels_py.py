"""Pure-Python exact polygon predicates.

Points are integer quadruples ``(X0, X1, Y0, Y1)`` standing for
``2x = X0 + X1*sqrt3`` and ``2y = Y0 + Y1*sqrt3``. Every decision reduces to
the sign of ``P + Q*sqrt3`` with integer P, Q, so no tolerance is involved.
The compiled module ``_kernels`` implements the same functions.
"""

from __future__ import annotations

from functools import cmp_to_key

_SQ3 = 1.7320508075688772
# bounding-box rejection only fires when boxes are this far apart, far above float error
_MARGIN = 1e-6


def sgn(p: int, q: int) -> int:
    """Sign of p + q*sqrt3."""
    if p >= 0 and q >= 0:
        return 1 if (p or q) else 0
    if p <= 0 and q <= 0:
        return -1
    lhs, rhs = p * p, 3 * q * q
    if p > 0:
        return 1 if lhs > rhs else -1
    return 1 if rhs > lhs else -1


def cross(a, b, c) -> int:
    """Orientation sign of the triangle (a, b, c)."""
    ux0, ux1 = b[0] - a[0], b[1] - a[1]
    uy0, uy1 = b[2] - a[2], b[3] - a[3]
    vx0, vx1 = c[0] - a[0], c[1] - a[1]
    vy0, vy1 = c[2] - a[2], c[3] - a[3]
    p = (ux0 * vy0 + 3 * ux1 * vy1) - (uy0 * vx0 + 3 * uy1 * vx1)
    q = (ux0 * vy1 + ux1 * vy0) - (uy0 * vx1 + uy1 * vx0)
    return sgn(p, q)


def dot_sign(a, b, c) -> int:
    """Sign of (b - a) . (c - a)."""
    ux0, ux1 = b[0] - a[0], b[1] - a[1]
    uy0, uy1 = b[2] - a[2], b[3] - a[3]
    vx0, vx1 = c[0] - a[0], c[1] - a[1]
    vy0, vy1 = c[2] - a[2], c[3] - a[3]
    p = ux0 * vx0 + 3 * ux1 * vx1 + uy0 * vy0 + 3 * uy1 * vy1
    q = ux0 * vx1 + ux1 * vx0 + uy0 * vy1 + uy1 * vy0
    return sgn(p, q)


def _scale(pt, s: int):
    return (pt[0] * s, pt[1] * s, pt[2] * s, pt[3] * s)


def on_segment(p, a, b) -> bool:
    """True if p lies on the closed segment [a, b]."""
    if cross(a, b, p) != 0:
        return False
    # p between a and b iff (a - p) . (b - p) <= 0
    return dot_sign(p, a, b) <= 0


def strictly_inside(p, poly, s: int = 1) -> bool:
    """True if p lies in the open interior of ``poly`` scaled by ``s``."""
    n = len(poly)
    verts = [_scale(v, s) for v in poly] if s != 1 else poly
    wn = 0
    for i in range(n):
        a = verts[i]
        b = verts[(i + 1) % n]
        if on_segment(p, a, b):
            return False
        ya = sgn(a[2] - p[2], a[3] - p[3])
        yb = sgn(b[2] - p[2], b[3] - p[3])
        if ya <= 0 < yb:
            if cross(a, b, p) > 0:
                wn += 1
        elif yb <= 0 < ya:
            if cross(a, b, p) < 0:
                wn -= 1
    return wn != 0


def _fx(pt) -> float:
    return pt[0] + pt[1] * _SQ3


def _fy(pt) -> float:
    return pt[2] + pt[3] * _SQ3


def _bbox(poly):
    xs = [_fx(v) for v in poly]
    ys = [_fy(v) for v in poly]
    return min(xs), max(xs), min(ys), max(ys)


def boxes_apart(a, b) -> bool:
    ax0, ax1, ay0, ay1 = _bbox(a)
    bx0, bx1, by0, by1 = _bbox(b)
    return ax1 < bx0 - _MARGIN or bx1 < ax0 - _MARGIN or ay1 < by0 - _MARGIN or by1 < ay0 - _MARGIN


def _edge_overlaps_interior(a, b, other) -> bool:
    """Split [a, b] at the vertices of ``other`` lying on it and probe each piece's midpoint."""
    cuts = [a, b]
    for v in other:
        if v != a and v != b and on_segment(v, a, b):
            cuts.append(v)
    if len(cuts) > 2:
        cuts.sort(key=cmp_to_key(lambda u, w: _along(a, b, u, w)))
    for u, w in zip(cuts, cuts[1:]):
        mid2 = (u[0] + w[0], u[1] + w[1], u[2] + w[2], u[3] + w[3])
        if strictly_inside(mid2, other, 2):
            return True
    return False


def _along(a, b, u, w) -> int:
    # order of u and w along the direction a -> b
    d = (b[0] - a[0], b[1] - a[1], b[2] - a[2], b[3] - a[3])
    diff = (w[0] - u[0], w[1] - u[1], w[2] - u[2], w[3] - u[3])
    p = d[0] * diff[0] + 3 * d[1] * diff[1] + d[2] * diff[2] + 3 * d[3] * diff[3]
    q = d[0] * diff[1] + d[1] * diff[0] + d[2] * diff[3] + d[3] * diff[2]
    return -sgn(p, q)


def polygons_overlap(pa, pb) -> bool:
    """True iff the open interiors of two simple polygons intersect."""
    if boxes_apart(pa, pb):
        return False
    if set(pa) == set(pb):
        return True
    na, nb = len(pa), len(pb)
    for i in range(na):
        a1 = pa[i]
        a2 = pa[(i + 1) % na]
        for j in range(nb):
            b1 = pb[j]
            b2 = pb[(j + 1) % nb]
            o1 = cross(a1, a2, b1)
            o2 = cross(a1, a2, b2)
            if o1 * o2 >= 0:
                continue
            o3 = cross(b1, b2, a1)
            o4 = cross(b1, b2, a2)
            if o3 * o4 < 0:
                return True
    for v in pa:
        if strictly_inside(v, pb):
            return True
    for v in pb:
        if strictly_inside(v, pa):
            return True
    for i in range(na):
        if _edge_overlaps_interior(pa[i], pa[(i + 1) % na], pb):
            return True
    for j in range(nb):
        if _edge_overlaps_interior(pb[j], pb[(j + 1) % nb], pa):
            return True
    return False


def overlapping_pairs(polys, pairs) -> list[tuple[int, int]]:
    """Subset of candidate index pairs whose polygons overlap."""
    return [(i, j) for i, j in pairs if polygons_overlap(polys[i], polys[j])]
