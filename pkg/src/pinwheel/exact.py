"""Exact scalar arithmetic over Q(sqrt(5)), the angle lattice, and rigid motions.

Everything geometric downstream rests on these types.  All values are
immutable and all operations are pure, so concurrent use needs no locking.
The only floating-point entry point is :func:`gamma_distance` (documented
precision 1e-12); every other operation is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

SQRT5 = math.sqrt(5.0)


def _rational_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


class QRoot5:
    """The real number a + b*sqrt(5) with rational a, b.

    Representation is unique (sqrt(5) is irrational), so equality is
    componentwise.  Comparisons and sign are decided exactly by rational
    casework.
    """

    __slots__ = ("a", "b")

    def __init__(self, a: Fraction | int | str = 0, b: Fraction | int | str = 0):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))

    def __setattr__(self, name, value):
        raise AttributeError("QRoot5 is immutable")

    @classmethod
    def of(cls, x: "QRoot5 | Fraction | int") -> "QRoot5":
        return x if isinstance(x, QRoot5) else cls(x, 0)

    def __repr__(self) -> str:
        return f"QRoot5({self.a!r}, {self.b!r})"

    def __str__(self) -> str:
        sign = "+" if self.b >= 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}r5"

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = QRoot5(other)
        if not isinstance(other, QRoot5):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def __add__(self, other) -> "QRoot5":
        o = QRoot5.of(other)
        return QRoot5(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self) -> "QRoot5":
        return QRoot5(-self.a, -self.b)

    def __sub__(self, other) -> "QRoot5":
        return self + (-QRoot5.of(other))

    def __rsub__(self, other) -> "QRoot5":
        return (-self) + QRoot5.of(other)

    def __mul__(self, other) -> "QRoot5":
        o = QRoot5.of(other)
        return QRoot5(self.a * o.a + 5 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "QRoot5":
        o = QRoot5.of(other)
        norm = o.a * o.a - 5 * o.b * o.b
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt5)")
        conj = QRoot5(o.a, -o.b)
        num = self * conj
        return QRoot5(num.a / norm, num.b / norm)

    def __rtruediv__(self, other) -> "QRoot5":
        return QRoot5.of(other) / self

    def __pow__(self, n: int) -> "QRoot5":
        if n < 0:
            return QRoot5(1) / self ** (-n)
        out, base = QRoot5(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def sign(self) -> int:
        """Sign of a + b*sqrt(5), computed exactly.

        Same-sign components give the answer immediately; otherwise the
        comparison reduces to a**2 versus 5*b**2.
        """
        a, b = self.a, self.b
        if a == 0 and b == 0:
            return 0
        if a >= 0 and b >= 0:
            return 1
        if a <= 0 and b <= 0:
            return -1
        # opposite signs: |a| vs |b|*sqrt5
        if a > 0:  # b < 0
            return 1 if a * a > 5 * b * b else -1
        return 1 if a * a < 5 * b * b else -1

    def __lt__(self, other) -> bool:
        return (self - QRoot5.of(other)).sign() < 0

    def __le__(self, other) -> bool:
        return (self - QRoot5.of(other)).sign() <= 0

    def __gt__(self, other) -> bool:
        return (self - QRoot5.of(other)).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - QRoot5.of(other)).sign() >= 0

    def __abs__(self) -> "QRoot5":
        return -self if self.sign() < 0 else self

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * SQRT5

    def to_json(self) -> dict:
        return {
            "an": str(self.a.numerator),
            "ad": str(self.a.denominator),
            "bn": str(self.b.numerator),
            "bd": str(self.b.denominator),
        }

    @classmethod
    def from_json(cls, d: dict) -> "QRoot5":
        return cls(
            Fraction(int(d["an"]), int(d["ad"])),
            Fraction(int(d["bn"]), int(d["bd"])),
        )


ZERO = QRoot5(0)
ONE = QRoot5(1)
LAMBDA = QRoot5(0, 1)  # the inflation factor sqrt(5)
INV_SQRT5 = QRoot5(0, Fraction(1, 5))  # 1/sqrt(5) = sqrt(5)/5


def qr5_sqrt(x: QRoot5) -> QRoot5 | None:
    """Exact nonnegative square root inside Q(sqrt5), or None if there is none.

    Solves (p + q*sqrt5)**2 = x by rational casework; used to normalise
    direction vectors in the decomposition search.
    """
    if x.sign() < 0:
        return None
    if not x:
        return ZERO
    a, b = x.a, x.b
    if b == 0:
        r = _rational_sqrt(a)
        if r is not None:
            return QRoot5(r, 0)
        r = _rational_sqrt(a / 5)
        if r is not None:
            return QRoot5(0, r)
        return None
    disc = _rational_sqrt(a * a - 5 * b * b)
    if disc is None:
        return None
    for t in ((a + disc) / 2, (a - disc) / 2):
        p = _rational_sqrt(t)
        if p is not None and p != 0:
            q = b / (2 * p)
            cand = QRoot5(p, q)
            if cand * cand == x and cand.sign() >= 0:
                return cand
            cand = -cand
            if cand * cand == x and cand.sign() >= 0:
                return cand
    return None


@dataclass(frozen=True)
class ExactComplex:
    """Complex number with QRoot5 real and imaginary parts."""

    re: QRoot5
    im: QRoot5

    @classmethod
    def of(cls, re=0, im=0) -> "ExactComplex":
        return cls(QRoot5.of(re), QRoot5.of(im))

    def __add__(self, other: "ExactComplex") -> "ExactComplex":
        return ExactComplex(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "ExactComplex") -> "ExactComplex":
        return ExactComplex(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "ExactComplex":
        return ExactComplex(-self.re, -self.im)

    def __mul__(self, other: "ExactComplex") -> "ExactComplex":
        return ExactComplex(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __truediv__(self, other: "ExactComplex") -> "ExactComplex":
        n2 = other.abs2()
        if not n2:
            raise ZeroDivisionError("complex division by zero")
        num = self * other.conjugate()
        return ExactComplex(num.re / n2, num.im / n2)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def conjugate(self) -> "ExactComplex":
        return ExactComplex(self.re, -self.im)

    def abs2(self) -> QRoot5:
        return self.re * self.re + self.im * self.im

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self) -> str:
        return f"({self.re},{self.im})"


C_ZERO = ExactComplex(ZERO, ZERO)
C_ONE = ExactComplex(ONE, ZERO)

# e^{i*theta} for theta = arctan(1/2): the unit complex (2+i)/sqrt5.
_PHASE_THETA = ExactComplex(QRoot5(0, Fraction(2, 5)), QRoot5(0, Fraction(1, 5)))
_PHASE_I = (C_ONE, ExactComplex(ZERO, ONE), ExactComplex(-ONE, ZERO), ExactComplex(ZERO, -ONE))


@dataclass(frozen=True)
class Angle:
    """Point k*theta + q*(pi/2) on the orientation lattice, theta = arctan(1/2).

    theta/pi is irrational, so (k, q mod 4) is a faithful coordinate: two
    angles are equal iff k and q agree.
    """

    k: int
    q: int

    def __post_init__(self):
        object.__setattr__(self, "q", self.q % 4)

    def __add__(self, other: "Angle") -> "Angle":
        return Angle(self.k + other.k, self.q + other.q)

    def __neg__(self) -> "Angle":
        return Angle(-self.k, -self.q)

    def __sub__(self, other: "Angle") -> "Angle":
        return self + (-other)

    def scaled(self, n: int) -> "Angle":
        return Angle(self.k * n, self.q * n)

    def is_zero(self) -> bool:
        return self.k == 0 and self.q == 0

    def radians(self) -> float:
        return self.k * math.atan2(1.0, 2.0) + self.q * math.pi / 2.0

    def to_json(self) -> dict:
        return {"k": self.k, "q": self.q}

    @classmethod
    def from_json(cls, d: dict) -> "Angle":
        return cls(int(d["k"]), int(d["q"]))


ANGLE_ZERO = Angle(0, 0)
ANGLE_THETA = Angle(1, 0)


@lru_cache(maxsize=None)
def _theta_power(k: int) -> ExactComplex:
    if k == 0:
        return C_ONE
    if k < 0:
        return _theta_power(-k).conjugate()
    half = _theta_power(k // 2)
    out = half * half
    if k & 1:
        out = out * _PHASE_THETA
    return out


def unit_phase(angle: Angle) -> ExactComplex:
    """Exact value of e^{i*angle}: ((2+i)/sqrt5)^k * i^q, squared modulus 1."""
    return _theta_power(angle.k) * _PHASE_I[angle.q]


def rotation_matrix(angle: Angle) -> tuple[tuple[QRoot5, QRoot5], tuple[QRoot5, QRoot5]]:
    """Exact 2x2 matrix of the lattice rotation; orthogonal in Q(sqrt5)."""
    p = unit_phase(angle)
    c, s = p.re, p.im
    return ((c, -s), (s, c))


@dataclass(frozen=True)
class Vec2:
    """Point or vector with QRoot5 coordinates."""

    x: QRoot5
    y: QRoot5


    def __add__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Vec2":
        return Vec2(-self.x, -self.y)

    def scaled(self, s: QRoot5 | Fraction | int) -> "Vec2":
        s = QRoot5.of(s)
        return Vec2(self.x * s, self.y * s)

    def dot(self, other: "Vec2") -> QRoot5:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Vec2") -> QRoot5:
        return self.x * other.y - self.y * other.x

    def norm2(self) -> QRoot5:
        return self.dot(self)

    def rotated(self, angle: Angle) -> "Vec2":
        p = unit_phase(angle)
        return Vec2(self.x * p.re - self.y * p.im, self.x * p.im + self.y * p.re)

    def is_zero(self) -> bool:
        return not self.x and not self.y

    def to_floats(self) -> tuple[float, float]:
        return (float(self.x), float(self.y))

    def __str__(self) -> str:
        return f"({self.x},{self.y})"


V_ZERO = Vec2(ZERO, ZERO)


@dataclass(frozen=True)
class RigidMotion:
    """Orientation-preserving isometry p -> R_angle(p) + translation.

    The group convention (x, R) . T = R(T + x) normalises to this
    rotate-then-translate form with translation R(x).
    """

    angle: Angle
    translation: Vec2

    @classmethod
    def identity(cls) -> "RigidMotion":
        return cls(ANGLE_ZERO, V_ZERO)

    def apply(self, p: Vec2) -> Vec2:
        return p.rotated(self.angle) + self.translation

    def compose(self, other: "RigidMotion") -> "RigidMotion":
        """self after other: (self . other)(p) = self(other(p))."""
        return RigidMotion(
            self.angle + other.angle,
            other.translation.rotated(self.angle) + self.translation,
        )

    def inverse(self) -> "RigidMotion":
        inv = -self.angle
        return RigidMotion(inv, -self.translation.rotated(inv))

    def is_identity(self) -> bool:
        return self.angle.is_zero() and self.translation.is_zero()

    def __str__(self) -> str:
        return f"[k={self.angle.k},q={self.angle.q};t={self.translation}]"


def motion_compose(g: RigidMotion, h: RigidMotion) -> RigidMotion:
    return g.compose(h)


def motion_inverse(g: RigidMotion) -> RigidMotion:
    return g.inverse()


def motion_apply(g: RigidMotion, p: Vec2) -> Vec2:
    return g.apply(p)


def gamma_distance(g: RigidMotion) -> float:
    """Distance of g to the identity in the isometry-group metric.

    Euclidean norm of the translation plus the Frobenius distance of the
    rotation matrix to the identity; float precision 1e-12.
    """
    t = math.sqrt(float(g.translation.norm2()))
    m = rotation_matrix(g.angle)
    fro = 0.0
    for i in range(2):
        for j in range(2):
            d = float(m[i][j]) - (1.0 if i == j else 0.0)
            fro += d * d
    return t + math.sqrt(fro)
