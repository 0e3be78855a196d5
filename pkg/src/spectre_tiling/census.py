"""Exact inflation matrices, count sequences and spectral data.

Vectors are indexed (G1..G6, O1..O6) for metatiles and (M1..M12) for
monotile orientations. Everything is integer or rational; floats only
appear when a caller asks for them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .lattice import QuadNumber

Matrix = list[list[int]]

INFLATION_2X2 = ((1, 1), (6, 7))

# metatile substitution, columns are parents (G1..G6, O1..O6)
M_GAMMA_OMEGA = (
    (1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0),
    (0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0),
    (0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0),
    (0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0),
    (0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0),
    (0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1),
    (1, 2, 1, 0, 1, 1, 1, 2, 1, 0, 1, 2),
    (1, 1, 2, 1, 0, 1, 2, 1, 2, 1, 0, 1),
    (1, 1, 1, 2, 1, 0, 1, 2, 1, 2, 1, 0),
    (0, 1, 1, 1, 2, 1, 0, 1, 2, 1, 2, 1),
    (1, 0, 1, 1, 1, 2, 1, 0, 1, 2, 1, 2),
    (2, 1, 0, 1, 1, 1, 2, 1, 0, 1, 2, 1),
)

# orientation content of each metatile, columns are metatiles
M_COMPOSE = (
    (1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0),
    (2, 2, 1, 1, 0, 1, 2, 2, 2, 1, 0, 1),
    (0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0),
    (1, 2, 2, 1, 1, 0, 1, 2, 2, 2, 1, 0),
    (0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0),
    (0, 1, 2, 2, 1, 1, 0, 1, 2, 2, 2, 1),
    (0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0),
    (1, 0, 1, 2, 2, 1, 1, 0, 1, 2, 2, 2),
    (0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0),
    (1, 1, 0, 1, 2, 2, 2, 1, 0, 1, 2, 2),
    (0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1),
    (2, 1, 1, 0, 1, 2, 2, 2, 1, 0, 1, 2),
)

# monotile-level inflation as printed
M_MONO = (
    (1, 0, 2, 0, 0, 0, -2, 1, -1, 0, 0, 0),
    (0, 1, 5, 0, 3, 1, 0, 2, -4, 2, -5, 2),
    (0, 0, 1, 0, 2, 0, 0, 0, -2, 1, -1, 0),
    (-5, 2, 0, 1, 5, 0, 3, 1, 0, 2, -4, 2),
    (-1, 0, 0, 0, 1, 0, 2, 0, 0, 0, -2, 1),
    (-4, 2, -5, 2, 0, 1, 5, 0, 3, 1, 0, 2),
    (-2, 1, -1, 0, 0, 0, 1, 0, 2, 0, 0, 0),
    (0, 2, -4, 2, -5, 2, 0, 1, 5, 0, 3, 1),
    (0, 0, -2, 1, -1, 0, 0, 0, 1, 0, 2, 0),
    (3, 1, 0, 2, -4, 2, -5, 2, 0, 1, 5, 0),
    (2, 0, 0, 0, -2, 1, -1, 0, 0, 0, 1, 0),
    (5, 0, 3, 1, 0, 2, -4, 2, -5, 2, 0, 1),
)

# published orientation counts for a G1 seed, steps 0..6
PUBLISHED_G1_ORIENTATIONS = (
    (1, 2, 0, 1, 0, 0, 0, 1, 0, 1, 0, 2),
    (2, 10, 1, 7, 1, 7, 0, 9, 1, 10, 2, 12),
    (12, 73, 9, 67, 7, 65, 7, 71, 9, 78, 11, 79),
    (78, 569, 72, 550, 66, 550, 65, 567, 73, 585, 79, 588),
    (586, 4470, 564, 4420, 548, 4421, 552, 4477, 571, 4528, 588, 4523),
    (4516, 35187, 4458, 35053, 4413, 35084, 4428, 35245, 4491, 35380, 4533, 35354),
    (35330, 277129, 35149, 276777, 35041, 276911, 35107, 277404, 35281, 277752, 35395, 277612),
)

# published (N_Gamma, N_Omega) for a G1 seed, steps 1..5
PUBLISHED_G1_METATILES = ((1, 6), (7, 48), (55, 378), (433, 2976), (3409, 23430))

SEEDS = tuple(f"{k}{i}" for k in "GO" for i in range(1, 7))


def seed_index(label: str) -> int:
    """Position of a seed label (G1..G6, O1..O6) in a 12-vector."""
    label = label.upper()
    if label not in SEEDS:
        raise ValueError(f"unknown seed {label!r}; expected one of {', '.join(SEEDS)}")
    return SEEDS.index(label)


def unit(label: str) -> list[int]:
    v = [0] * 12
    v[seed_index(label)] = 1
    return v


def matvec(m, v) -> list:
    return [sum(a * b for a, b in zip(row, v)) for row in m]


def matmul(a, b) -> list[list]:
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matpow(m, n: int) -> list[list]:
    if n < 0:
        raise ValueError("negative power")
    out = identity(len(m))
    base = [list(r) for r in m]
    while n:
        if n & 1:
            out = matmul(out, base)
        base = matmul(base, base)
        n >>= 1
    return out


def inverse(m) -> list[list[Fraction]]:
    """Exact Gauss-Jordan inverse over the rationals."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def inflate2(c, n: int) -> tuple[int, int]:
    if n < 0:
        raise ValueError("n must be >= 0")
    g, o = c
    for _ in range(n):
        g, o = g + o, 6 * g + 7 * o
    return g, o


def inflate12(c, n: int) -> list[int]:
    if n < 0:
        raise ValueError("n must be >= 0")
    v = list(c)
    for _ in range(n):
        v = matvec(M_GAMMA_OMEGA, v)
    return v


def compose(c) -> list[int]:
    """Monotile orientation counts of a metatile count vector."""
    return matvec(M_COMPOSE, c)


class MatrixMismatch(ValueError):
    pass


def mono_matrix() -> list[list[int]]:
    """M . M_GO . M^-1, checked to be integral and equal to the printed matrix."""
    prod = matmul(matmul(M_COMPOSE, M_GAMMA_OMEGA), inverse(M_COMPOSE))
    out = []
    for row in prod:
        if any(x.denominator != 1 for x in row):
            raise MatrixMismatch("conjugated matrix is not integral")
        out.append([int(x) for x in row])
    if out != [list(r) for r in M_MONO]:
        raise MatrixMismatch("conjugated matrix differs from the printed one")
    return out


def orientation_counts(seed: str, n: int) -> list[int]:
    """Orientation counts after n steps under the fixed substitution matrix."""
    return compose(inflate12(unit(seed), n))


def aggregate(c) -> tuple[int, int]:
    return sum(c[:6]), sum(c[6:])


# ---------------------------------------------------------------------------
# labels produced by the geometric construction
#
# Each substitution step mirrors the orientation pattern of the children
# (i -> 2 - i within each kind) relative to the previous one, so the
# matrix applied alternates between M_GO and its conjugate by that flip.


def _flip() -> list[list[int]]:
    p = [[0] * 12 for _ in range(12)]
    for b in (0, 6):
        for i in range(6):
            p[b + (-i) % 6][b + i] = 1
    return p


FLIP = _flip()
M_GAMMA_OMEGA_FLIPPED = matmul(matmul(FLIP, M_GAMMA_OMEGA), FLIP)


def level_matrix(level: int):
    """Matrix taking labels at ``level`` to labels at ``level - 1`` (level >= 2)."""
    return M_GAMMA_OMEGA if level % 2 == 0 else M_GAMMA_OMEGA_FLIPPED


def geometric_metatile_counts(seed: str, n: int) -> list[int]:
    """Metatile label counts of the generated step-n patch."""
    if n < 0:
        raise ValueError("n must be >= 0")
    v = unit(seed)
    for level in range(n + 1, 1, -1):
        v = matvec(level_matrix(level), v)
    return v


def geometric_orientation_counts(seed: str, n: int) -> list[int]:
    return compose(geometric_metatile_counts(seed, n))


# ---------------------------------------------------------------------------
# spectral data over Q(sqrt 15)


def q15(a, b=0) -> QuadNumber:
    return QuadNumber.make(a, b, 15)


PERRON = q15(4, 1)


@dataclass(frozen=True)
class SpectralData:
    perron: QuadNumber
    metatile_ratio: QuadNumber  # N_Omega / N_Gamma in the limit
    even_odd_ratio: QuadNumber
    eigvec_2x2: tuple[QuadNumber, QuadNumber]
    eigvec_mono: tuple[QuadNumber, ...]
    eigvec_metatile: tuple[QuadNumber, ...]

    def to_json(self) -> dict:
        def enc(q):
            return {"rational": str(q.a), "sqrt15": str(q.b), "float": float(q)}

        return {
            "perron": enc(self.perron),
            "omega_gamma_ratio": enc(self.metatile_ratio),
            "even_odd_ratio": enc(self.even_odd_ratio),
            "eigvec_2x2": [enc(x) for x in self.eigvec_2x2],
            "eigvec_mono": [enc(x) for x in self.eigvec_mono],
        }


def qmatvec(m, v) -> list[QuadNumber]:
    out = []
    for row in m:
        acc = q15(0)
        for a, x in zip(row, v):
            if a:
                acc = acc + x * a
        out.append(acc)
    return out


def is_eigenpair(m, v, lam: QuadNumber) -> bool:
    return qmatvec(m, v) == [x * lam for x in v]


def char_poly_2x2(m=INFLATION_2X2) -> tuple[int, int]:
    """(trace, determinant); the eigenvalues solve x^2 - trace x + det = 0."""
    (a, b), (c, d) = m
    return a + d, a * d - b * c


def spectral() -> SpectralData:
    """Exact Perron data, each eigenpair verified before returning.

    M_GO is nonnegative and primitive and has a positive eigenvector for
    4 + sqrt15, which is therefore its Perron root; M_mono is conjugate to
    it through M and shares the spectrum.
    """
    trace, det = char_poly_2x2()
    # roots of x^2 - 8x + 1 are 4 +- sqrt15
    lam = q15(Fraction(trace, 2), 1)
    if lam * lam - lam * trace + det != q15(0) or (trace * trace - 4 * det) != 4 * 15:
        raise MatrixMismatch("2x2 characteristic data changed")
    ratio = lam - 1
    v2 = (q15(1), ratio)
    if not is_eigenpair(INFLATION_2X2, v2, lam):
        raise MatrixMismatch("2x2 eigenvector check failed")
    w = tuple([q15(1)] * 6 + [ratio] * 6)
    if not is_eigenpair(M_GAMMA_OMEGA, w, lam):
        raise MatrixMismatch("metatile eigenvector check failed")
    if not is_primitive(M_GAMMA_OMEGA):
        raise MatrixMismatch("metatile matrix is not primitive")
    vm = tuple(q15(4, -1) if k % 2 == 0 else q15(1) for k in range(12))
    if not is_eigenpair(M_MONO, vm, lam):
        raise MatrixMismatch("monotile eigenvector check failed")
    # the eigenvector of M_mono is M applied to the metatile one, up to scale
    mw = qmatvec(M_COMPOSE, w)
    scale = mw[1] / vm[1]
    if any(a != b * scale for a, b in zip(mw, vm)):
        raise MatrixMismatch("eigenvectors are not related through M")
    even_odd = vm[1] / vm[0]
    return SpectralData(lam, ratio, even_odd, v2, vm, w)


def is_primitive(m) -> bool:
    """Nonnegative with a strictly positive power (checked up to the Wielandt bound)."""
    n = len(m)
    if any(x < 0 for row in m for x in row):
        return False
    b = [[int(x > 0) for x in row] for row in m]
    p = b
    for _ in range((n - 1) ** 2 + 1):
        if all(x for row in p for x in row):
            return True
        p = [[int(x > 0) for x in row] for row in matmul(p, b)]
    return False


def census_table(seed: str, steps: int, geometric: bool = False) -> list[dict]:
    """Rows of (step, metatile counts, orientation counts, ratios) for steps 0..steps."""
    rows = []
    for n in range(steps + 1):
        met = geometric_metatile_counts(seed, n) if geometric else inflate12(unit(seed), n)
        ori = compose(met)
        g, o = aggregate(met)
        odd = sum(ori[0::2])
        even = sum(ori[1::2])
        rows.append(
            {
                "step": n,
                "n_gamma": g,
                "n_omega": o,
                "omega_gamma_ratio": (o / g) if g else None,
                "metatiles": met,
                "orientations": ori,
                "n_monotiles": sum(ori),
                "even_odd_ratio": even / odd,
            }
        )
    return rows
