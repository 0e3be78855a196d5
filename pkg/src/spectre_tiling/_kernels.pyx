# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled exact polygon predicates; mirrors ``_kernels_py`` function by function."""

from . import _kernels_py

ctypedef long long ll

cdef double SQ3 = 1.7320508075688772
cdef double MARGIN = 1e-6
# products in sgn square cross terms; keep local coordinate spans well inside int64
cdef ll SPAN_LIMIT = 1 << 13


cdef inline int sgn(ll p, ll q) noexcept nogil:
    cdef ll lhs, rhs
    if p >= 0 and q >= 0:
        return 1 if (p != 0 or q != 0) else 0
    if p <= 0 and q <= 0:
        return -1
    lhs = p * p
    rhs = 3 * q * q
    if p > 0:
        return 1 if lhs > rhs else -1
    return 1 if rhs > lhs else -1


cdef inline int cross(const ll* a, const ll* b, const ll* c) noexcept nogil:
    cdef ll ux0 = b[0] - a[0], ux1 = b[1] - a[1]
    cdef ll uy0 = b[2] - a[2], uy1 = b[3] - a[3]
    cdef ll vx0 = c[0] - a[0], vx1 = c[1] - a[1]
    cdef ll vy0 = c[2] - a[2], vy1 = c[3] - a[3]
    cdef ll p = (ux0 * vy0 + 3 * ux1 * vy1) - (uy0 * vx0 + 3 * uy1 * vx1)
    cdef ll q = (ux0 * vy1 + ux1 * vy0) - (uy0 * vx1 + uy1 * vx0)
    return sgn(p, q)


cdef inline int dot_sign(const ll* a, const ll* b, const ll* c) noexcept nogil:
    cdef ll ux0 = b[0] - a[0], ux1 = b[1] - a[1]
    cdef ll uy0 = b[2] - a[2], uy1 = b[3] - a[3]
    cdef ll vx0 = c[0] - a[0], vx1 = c[1] - a[1]
    cdef ll vy0 = c[2] - a[2], vy1 = c[3] - a[3]
    cdef ll p = ux0 * vx0 + 3 * ux1 * vx1 + uy0 * vy0 + 3 * uy1 * vy1
    cdef ll q = ux0 * vx1 + ux1 * vx0 + uy0 * vy1 + uy1 * vy0
    return sgn(p, q)


cdef inline bint on_segment(const ll* p, const ll* a, const ll* b) noexcept nogil:
    if cross(a, b, p) != 0:
        return False
    return dot_sign(p, a, b) <= 0


cdef bint strictly_inside(const ll* p, const ll* poly, int n, ll s) noexcept nogil:
    cdef int i, wn = 0, ya, yb
    cdef ll a[4]
    cdef ll b[4]
    cdef int k
    for i in range(n):
        for k in range(4):
            a[k] = poly[4 * i + k] * s
            b[k] = poly[4 * ((i + 1) % n) + k] * s
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


cdef inline int along(const ll* a, const ll* b, const ll* u, const ll* w) noexcept nogil:
    cdef ll d0 = b[0] - a[0], d1 = b[1] - a[1], d2 = b[2] - a[2], d3 = b[3] - a[3]
    cdef ll f0 = w[0] - u[0], f1 = w[1] - u[1], f2 = w[2] - u[2], f3 = w[3] - u[3]
    cdef ll p = d0 * f0 + 3 * d1 * f1 + d2 * f2 + 3 * d3 * f3
    cdef ll q = d0 * f1 + d1 * f0 + d2 * f3 + d3 * f2
    return -sgn(p, q)


cdef bint same_point(const ll* u, const ll* w) noexcept nogil:
    return u[0] == w[0] and u[1] == w[1] and u[2] == w[2] and u[3] == w[3]


cdef bint edge_overlaps_interior(const ll* a, const ll* b, const ll* other, int n) noexcept nogil:
    # cut points: indices into ``other`` or -1 / -2 for a / b
    cdef const ll* cuts[64]
    cdef int m = 2, i, j
    cdef const ll* tmp
    cdef ll mid[4]
    cuts[0] = a
    cuts[1] = b
    for i in range(n):
        if m >= 64:
            break
        if same_point(other + 4 * i, a) or same_point(other + 4 * i, b):
            continue
        if on_segment(other + 4 * i, a, b):
            cuts[m] = other + 4 * i
            m += 1
    # insertion sort along a -> b
    for i in range(1, m):
        tmp = cuts[i]
        j = i - 1
        while j >= 0 and along(a, b, cuts[j], tmp) > 0:
            cuts[j + 1] = cuts[j]
            j -= 1
        cuts[j + 1] = tmp
    for i in range(m - 1):
        for j in range(4):
            mid[j] = cuts[i][j] + cuts[i + 1][j]
        if strictly_inside(mid, other, n, 2):
            return True
    return False


cdef bint same_vertex_set(const ll* pa, int na, const ll* pb, int nb) noexcept nogil:
    cdef int i, j
    cdef bint found
    if na != nb:
        return False
    for i in range(na):
        found = False
        for j in range(nb):
            if same_point(pa + 4 * i, pb + 4 * j):
                found = True
                break
        if not found:
            return False
    return True


cdef bint overlap(const ll* pa, int na, const ll* pb, int nb) noexcept nogil:
    cdef int i, j, o1, o2, o3, o4
    if same_vertex_set(pa, na, pb, nb):
        return True
    for i in range(na):
        for j in range(nb):
            o1 = cross(pa + 4 * i, pa + 4 * ((i + 1) % na), pb + 4 * j)
            o2 = cross(pa + 4 * i, pa + 4 * ((i + 1) % na), pb + 4 * ((j + 1) % nb))
            if o1 * o2 >= 0:
                continue
            o3 = cross(pb + 4 * j, pb + 4 * ((j + 1) % nb), pa + 4 * i)
            o4 = cross(pb + 4 * j, pb + 4 * ((j + 1) % nb), pa + 4 * ((i + 1) % na))
            if o3 * o4 < 0:
                return True
    for i in range(na):
        if strictly_inside(pa + 4 * i, pb, nb, 1):
            return True
    for j in range(nb):
        if strictly_inside(pb + 4 * j, pa, na, 1):
            return True
    for i in range(na):
        if edge_overlaps_interior(pa + 4 * i, pa + 4 * ((i + 1) % na), pb, nb):
            return True
    for j in range(nb):
        if edge_overlaps_interior(pb + 4 * j, pb + 4 * ((j + 1) % nb), pa, na):
            return True
    return False


cdef class _Packed:
    """Polygons flattened into one contiguous int64 buffer."""
    cdef ll[:] data
    cdef int[:] start
    cdef int[:] count
    cdef double[:] box
    cdef ll[:] comp

    def __init__(self, polys):
        from array import array
        flat = array("q")
        starts = array("i")
        counts = array("i")
        boxes = array("d")
        comps = array("q")
        for poly in polys:
            starts.append(len(flat))
            counts.append(len(poly))
            xs = []
            ys = []
            for v in poly:
                flat.extend(v)
                xs.append(v[0] + v[1] * SQ3)
                ys.append(v[2] + v[3] * SQ3)
            boxes.extend((min(xs), max(xs), min(ys), max(ys)))
            for k in range(4):
                col = [v[k] for v in poly]
                comps.extend((min(col), max(col)))
        if len(flat) == 0:
            flat.append(0)
        self.data = flat
        self.start = starts if len(starts) else array("i", [0])
        self.count = counts if len(counts) else array("i", [0])
        self.box = boxes if len(boxes) else array("d", [0.0])
        self.comp = comps if len(comps) else array("q", [0])


cdef bint _apart(double[:] box, int i, int j) noexcept nogil:
    return (box[4 * i + 1] < box[4 * j] - MARGIN or box[4 * j + 1] < box[4 * i] - MARGIN
            or box[4 * i + 3] < box[4 * j + 2] - MARGIN or box[4 * j + 3] < box[4 * i + 2] - MARGIN)


cdef bint _small_span(ll[:] comp, int i, int j) noexcept nogil:
    cdef int k
    cdef ll lo, hi
    for k in range(4):
        lo = min(comp[8 * i + 2 * k], comp[8 * j + 2 * k])
        hi = max(comp[8 * i + 2 * k + 1], comp[8 * j + 2 * k + 1])
        if hi - lo >= SPAN_LIMIT:
            return False
    return True


def polygons_overlap(pa, pb):
    """True iff the open interiors of two simple polygons intersect."""
    return bool(overlapping_pairs([pa, pb], [(0, 1)]))


def overlapping_pairs(polys, pairs):
    """Subset of candidate index pairs whose polygons overlap."""
    cdef _Packed pk = _Packed(polys)
    cdef ll* base = &pk.data[0]
    cdef int i, j
    out = []
    for i, j in pairs:
        if _apart(pk.box, i, j):
            continue
        if not _small_span(pk.comp, i, j):
            if _kernels_py.polygons_overlap(polys[i], polys[j]):
                out.append((i, j))
            continue
        if overlap(base + pk.start[i], pk.count[i], base + pk.start[j], pk.count[j]):
            out.append((i, j))
    return out


def strictly_inside_point(p, poly, int s=1):
    cdef _Packed pk = _Packed([poly, [p]])
    cdef ll* base = &pk.data[0]
    return bool(strictly_inside(base + pk.start[1], base, pk.count[0], s))
