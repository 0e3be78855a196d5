"""Exact positions on the dodecagonal 4-vector lattice.

Every position and displacement is a :class:`Vec4`, an integer combination of
four basis vectors e1..e4 placed at 0, 30, 60 and 90 degrees. Angles are
integers counting multiples of 30 degrees.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

Number = Union[int, Fraction]


@dataclass(frozen=True, order=True)
class Vec4:
    c1: int
    c2: int
    c3: int
    c4: int

    def __iter__(self) -> Iterator[int]:
        yield self.c1
        yield self.c2
        yield self.c3
        yield self.c4

    def __add__(self, other: Vec4) -> Vec4:
        return Vec4(self.c1 + other.c1, self.c2 + other.c2, self.c3 + other.c3, self.c4 + other.c4)

    def __sub__(self, other: Vec4) -> Vec4:
        return Vec4(self.c1 - other.c1, self.c2 - other.c2, self.c3 - other.c3, self.c4 - other.c4)

    def __neg__(self) -> Vec4:
        return Vec4(-self.c1, -self.c2, -self.c3, -self.c4)

    def __mul__(self, k: int) -> Vec4:
        return Vec4(k * self.c1, k * self.c2, k * self.c3, k * self.c4)

    __rmul__ = __mul__

    def rotate(self, steps: int) -> Vec4:
        return rotate(self, steps)

    def to_list(self) -> list[int]:
        return [self.c1, self.c2, self.c3, self.c4]

    @classmethod
    def of(cls, seq) -> Vec4:
        a, b, c, d = (int(x) for x in seq)
        return cls(a, b, c, d)


ZERO = Vec4(0, 0, 0, 0)

# rows of the 30 degree rotation acting on column vectors:
# e1 -> e2, e2 -> e3, e3 -> e4, e4 -> e3 - e1
ROT30 = ((0, 0, 0, -1), (1, 0, 0, 0), (0, 1, 0, 1), (0, 0, 1, 0))


def _matmul(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(4)) for j in range(4)) for i in range(4))


def _matpow_table():
    ident = tuple(tuple(int(i == j) for j in range(4)) for i in range(4))
    out = [ident]
    for _ in range(11):
        out.append(_matmul(ROT30, out[-1]))
    return tuple(out)


ROT_MATRICES = _matpow_table()


def rotate(v: Vec4, steps: int) -> Vec4:
    """Rotate ``v`` by ``steps`` multiples of 30 degrees counterclockwise."""
    m = ROT_MATRICES[steps % 12]
    c = (v.c1, v.c2, v.c3, v.c4)
    return Vec4(
        m[0][0] * c[0] + m[0][1] * c[1] + m[0][2] * c[2] + m[0][3] * c[3],
        m[1][0] * c[0] + m[1][1] * c[1] + m[1][2] * c[2] + m[1][3] * c[3],
        m[2][0] * c[0] + m[2][1] * c[1] + m[2][2] * c[2] + m[2][3] * c[3],
        m[3][0] * c[0] + m[3][1] * c[1] + m[3][2] * c[2] + m[3][3] * c[3],
    )


def rotate30(v: Vec4) -> Vec4:
    return rotate(v, 1)


def mirror_x(v: Vec4) -> Vec4:
    """Reflection across the x axis: e1 -> e1, e2 -> e2 - e4, e3 -> e1 - e3, e4 -> -e4."""
    return Vec4(v.c1 + v.c3, v.c2, -v.c3, -v.c2 - v.c4)


def _units() -> tuple[Vec4, ...]:
    out = [Vec4(1, 0, 0, 0)]
    for _ in range(11):
        out.append(rotate30(out[-1]))
    return tuple(out)


UNITS = _units()


def unit_vec4(k: int) -> Vec4:
    """The k-th dodecagonal unit vector, k in 1..12, at angle (k-1)*30 degrees."""
    if not isinstance(k, int) or not 1 <= k <= 12:
        raise ValueError(f"direction index must be in 1..12, got {k!r}")
    return UNITS[k - 1]


def direction_parity(k: int) -> str:
    return "odd" if k % 2 else "even"


@dataclass(frozen=True)
class UnitDir:
    k: int

    def __post_init__(self):
        unit_vec4(self.k)

    @property
    def parity(self) -> str:
        return direction_parity(self.k)

    @property
    def vec4(self) -> Vec4:
        return unit_vec4(self.k)


T1 = Vec4(-2, 1, 1, 1)
T2 = Vec4(1, 1, 1, -2)
T3 = Vec4(-1, 2, 2, -1)
TRANSLATIONS = {"T1": T1, "T2": T2, "T3": T3}

# translation class of duplicated even monotiles, by orientation
TRANSLATION_CLASS = {2: "T1", 8: "T1", 4: "T2", 10: "T2", 6: "T3", 12: "T3"}


def translation_class(d: Vec4) -> str | None:
    """Name of the translation class of ``d`` up to sign, or None."""
    for name, t in TRANSLATIONS.items():
        if d == t or d == -t:
            return name
    return None


# ---------------------------------------------------------------------------
# exact scalars a + b*sqrt(d)


@dataclass(frozen=True)
class QuadNumber:
    """Exact number ``a + b*sqrt(d)`` with rational a, b and squarefree d > 1."""

    a: Fraction
    b: Fraction
    d: int

    @classmethod
    def make(cls, a: Number, b: Number, d: int) -> QuadNumber:
        return cls(Fraction(a), Fraction(b), d)

    def _coerce(self, other) -> QuadNumber:
        if isinstance(other, QuadNumber):
            if other.d != self.d:
                raise ValueError("mixed quadratic fields")
            return other
        return QuadNumber(Fraction(other), Fraction(0), self.d)

    def __add__(self, other) -> QuadNumber:
        o = self._coerce(other)
        return QuadNumber(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __sub__(self, other) -> QuadNumber:
        o = self._coerce(other)
        return QuadNumber(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other) -> QuadNumber:
        return self._coerce(other) - self

    def __neg__(self) -> QuadNumber:
        return QuadNumber(-self.a, -self.b, self.d)

    def __mul__(self, other) -> QuadNumber:
        o = self._coerce(other)
        return QuadNumber(self.a * o.a + self.d * self.b * o.b, self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def conjugate(self) -> QuadNumber:
        return QuadNumber(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def __truediv__(self, other) -> QuadNumber:
        o = self._coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        num = self * o.conjugate()
        return QuadNumber(num.a / n, num.b / n, self.d)

    def sign(self) -> int:
        return quad_sign(self.a, self.b, self.d)

    def __lt__(self, other) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - other).sign() >= 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, (QuadNumber, int, Fraction)):
            return NotImplemented
        o = self._coerce(other)
        return self.a == o.a and self.b == o.b

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.d))

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self) -> str:
        return f"({self.a} + {self.b}*sqrt({self.d}))"


def quad_sign(a: Number, b: Number, d: int) -> int:
    """Exact sign of a + b*sqrt(d)."""
    if a >= 0 and b >= 0:
        return 1 if (a > 0 or b > 0) else 0
    if a <= 0 and b <= 0:
        return -1
    # opposite signs: compare squares
    lhs, rhs = a * a, d * b * b
    if a > 0:
        return 1 if lhs > rhs else -1
    return 1 if rhs > lhs else -1


def sqrt3(a: Number = 0, b: Number = 1) -> QuadNumber:
    return QuadNumber.make(a, b, 3)


@dataclass(frozen=True)
class ExactPoint:
    x: QuadNumber
    y: QuadNumber

    def __add__(self, other: ExactPoint) -> ExactPoint:
        return ExactPoint(self.x + other.x, self.y + other.y)

    def __sub__(self, other: ExactPoint) -> ExactPoint:
        return ExactPoint(self.x - other.x, self.y - other.y)

    def to_float(self) -> tuple[float, float]:
        return float(self.x), float(self.y)


@dataclass(frozen=True)
class EdgeParams:
    """Edge lengths: ``a`` for even edges, ``b`` for odd edges."""

    a: float = 1.0
    b: float = 1.0

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise ValueError("edge lengths must be non-negative")
        if self.a == 0 and self.b == 0:
            raise ValueError("edge lengths cannot both be zero")

    @property
    def is_unit(self) -> bool:
        return self.a == 1 and self.b == 1

    @classmethod
    def parse(cls, text: str) -> EdgeParams:
        parts = text.split(",")
        if len(parts) != 2:
            raise ValueError(f"expected 'a,b', got {text!r}")
        return cls(float(parts[0]), float(parts[1]))


UNIT_PARAMS = EdgeParams(1.0, 1.0)


def scaled_coords(v: Vec4) -> tuple[int, int, int, int]:
    """Integers (X0, X1, Y0, Y1) with 2x = X0 + X1*sqrt3 and 2y = Y0 + Y1*sqrt3."""
    return (2 * v.c1 + v.c3, v.c2, v.c2 + 2 * v.c4, v.c3)


def embed_exact(v: Vec4) -> ExactPoint:
    x0, x1, y0, y1 = scaled_coords(v)
    half = Fraction(1, 2)
    return ExactPoint(QuadNumber(x0 * half, x1 * half, 3), QuadNumber(y0 * half, y1 * half, 3))


_COS = (1.0, math.sqrt(3) / 2, 0.5, 0.0)
_SIN = (0.0, 0.5, math.sqrt(3) / 2, 1.0)


def embed_float(v: Vec4, params: EdgeParams = UNIT_PARAMS) -> tuple[float, float]:
    # e1, e3 carry odd directions (length b); e2, e4 carry even ones (length a)
    s = (params.b, params.a, params.b, params.a)
    c = (v.c1, v.c2, v.c3, v.c4)
    x = sum(c[i] * s[i] * _COS[i] for i in range(4))
    y = sum(c[i] * s[i] * _SIN[i] for i in range(4))
    return x, y


def embed(v: Vec4, params: EdgeParams | None = None):
    """Cartesian image of ``v``: exact for unit edges, floats otherwise."""
    if params is None or params.is_unit:
        return embed_exact(v)
    return embed_float(v, params)


def squared_length(v: Vec4) -> QuadNumber:
    p = embed_exact(v)
    return p.x * p.x + p.y * p.y
