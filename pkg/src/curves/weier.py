"""Weierstrass models over Q, coordinate changes and the group law."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Optional, Tuple

from sympy import integer_nthroot, isprime

from src.algebra.qpoly import as_rational
from src.utils.exceptions import SingularCurveError, UnsupportedInputError


@dataclass(frozen=True)
class Transformation:
    """Coordinate change x = u^2 x' + r, y = u^3 y' + s u^2 x' + t."""

    u: Fraction = Fraction(1)
    r: Fraction = Fraction(0)
    s: Fraction = Fraction(0)
    t: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("u", "r", "s", "t"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.u == 0:
            raise UnsupportedInputError("transformation with u = 0")

    @classmethod
    def identity(cls) -> "Transformation":
        return cls()

    @property
    def is_identity(self) -> bool:
        return self == Transformation.identity()

    def then(self, other: "Transformation") -> "Transformation":
        """Apply self first, then other."""
        u1, r1, s1, t1 = self.u, self.r, self.s, self.t
        u2, r2, s2, t2 = other.u, other.r, other.s, other.t
        return Transformation(
            u1 * u2,
            u1 ** 2 * r2 + r1,
            s1 + u1 * s2,
            t1 + u1 ** 2 * s1 * r2 + u1 ** 3 * t2,
        )

    def inverse(self) -> "Transformation":
        u, r, s, t = self.u, self.r, self.s, self.t
        return Transformation(1 / u, -r / u ** 2, -s / u, (r * s - t) / u ** 3)

    def apply(self, a: Tuple[Fraction, ...]) -> Tuple[Fraction, ...]:
        a1, a2, a3, a4, a6 = a
        u, r, s, t = self.u, self.r, self.s, self.t
        return (
            (a1 + 2 * s) / u,
            (a2 - s * a1 + 3 * r - s * s) / u ** 2,
            (a3 + r * a1 + 2 * t) / u ** 3,
            (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u ** 4,
            (a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1) / u ** 6,
        )

    def map_point(self, point: "AffinePoint") -> "AffinePoint":
        if point.is_infinity:
            return point
        xp = (point.x - self.r) / self.u ** 2
        yp = (point.y - self.s * (point.x - self.r) - self.t) / self.u ** 3
        return AffinePoint(xp, yp)


@dataclass(frozen=True)
class AffinePoint:
    x: Optional[Fraction] = None
    y: Optional[Fraction] = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __str__(self) -> str:
        return "O" if self.is_infinity else f"({self.x}, {self.y})"


INFINITY = AffinePoint()


@dataclass(frozen=True)
class WeierstrassModel:
    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a6: Fraction
    b2: Fraction = field(init=False, compare=False, repr=False)
    b4: Fraction = field(init=False, compare=False, repr=False)
    b6: Fraction = field(init=False, compare=False, repr=False)
    b8: Fraction = field(init=False, compare=False, repr=False)
    c4: Fraction = field(init=False, compare=False, repr=False)
    c6: Fraction = field(init=False, compare=False, repr=False)
    discriminant: Fraction = field(init=False, compare=False, repr=False)
    j_invariant: Fraction = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        a1, a2, a3, a4, a6 = self.a_invariants
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        c4 = b2 * b2 - 24 * b4
        c6 = -b2 ** 3 + 36 * b2 * b4 - 216 * b6
        disc = -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
        if disc == 0:
            raise SingularCurveError(self.a_invariants)
        for name, value in (("b2", b2), ("b4", b4), ("b6", b6), ("b8", b8),
                            ("c4", c4), ("c6", c6), ("discriminant", disc)):
            object.__setattr__(self, name, value)
        object.__setattr__(self, "j_invariant", c4 ** 3 / disc)

    @classmethod
    def from_short(cls, A, B) -> "WeierstrassModel":
        return cls(0, 0, 0, A, B)

    @property
    def a_invariants(self) -> Tuple[Fraction, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def is_short(self) -> bool:
        return self.a1 == 0 and self.a2 == 0 and self.a3 == 0

    @property
    def short_coefficients(self) -> Tuple[Fraction, Fraction]:
        """(A, B) of the short model reached by short_model (u = 1)."""
        short, _ = short_model(self)
        return short.a4, short.a6

    def transform(self, transformation: Transformation) -> "WeierstrassModel":
        return WeierstrassModel(*transformation.apply(self.a_invariants))

    def contains(self, point: AffinePoint) -> bool:
        if point.is_infinity:
            return True
        x, y = point.x, point.y
        a1, a2, a3, a4, a6 = self.a_invariants
        return y * y + a1 * x * y + a3 * y == x ** 3 + a2 * x * x + a4 * x + a6

    def __str__(self) -> str:
        return "[" + ",".join(str(a) for a in self.a_invariants) + "]"


def make_curve(a1, a2, a3, a4, a6) -> WeierstrassModel:
    return WeierstrassModel(a1, a2, a3, a4, a6)


def short_model(E: WeierstrassModel) -> Tuple[WeierstrassModel, Transformation]:
    """Y^2 = X^3 + A X + B with A = -c4/48, B = -c6/864, and the change of coordinates."""
    if E.is_short:
        return E, Transformation.identity()
    s = -E.a1 / 2
    r = -E.b2 / 12
    t = -(E.a1 * r + E.a3) / 2
    transformation = Transformation(1, r, s, t)
    return E.transform(transformation), transformation


def negate_point(E: WeierstrassModel, P: AffinePoint) -> AffinePoint:
    if P.is_infinity:
        return P
    return AffinePoint(P.x, -P.y - E.a1 * P.x - E.a3)


def add_points(E: WeierstrassModel, P: AffinePoint, Q: AffinePoint) -> AffinePoint:
    for point in (P, Q):
        if not E.contains(point):
            raise UnsupportedInputError(f"point {point} is not on curve {E}")
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    a1, a2, a3, a4, a6 = E.a_invariants
    x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
    if x1 == x2:
        if y1 + y2 + a1 * x2 + a3 == 0:
            return INFINITY
        denom = 2 * y1 + a1 * x1 + a3
        slope = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / denom
        intercept = (-x1 ** 3 + a4 * x1 + 2 * a6 - a3 * y1) / denom
    else:
        slope = (y2 - y1) / (x2 - x1)
        intercept = (y1 * x2 - y2 * x1) / (x2 - x1)
    x3 = slope * slope + a1 * slope - a2 - x1 - x2
    y3 = -(slope + a1) * x3 - intercept - a3
    return AffinePoint(x3, y3)


def scalar_multiple(E: WeierstrassModel, n: int, P: AffinePoint) -> AffinePoint:
    if n < 0:
        return scalar_multiple(E, -n, negate_point(E, P))
    result, addend = INFINITY, P
    while n:
        if n & 1:
            result = add_points(E, result, addend)
        addend = add_points(E, addend, addend)
        n >>= 1
    return result


def rational_root(value: Fraction, n: int) -> Optional[Fraction]:
    """The rational n-th root of value when one exists (the positive one for even n)."""
    value = as_rational(value)
    if value == 0:
        return Fraction(0)
    if value < 0:
        if n % 2 == 0:
            return None
        root = rational_root(-value, n)
        return None if root is None else -root
    num, num_exact = integer_nthroot(value.numerator, n)
    den, den_exact = integer_nthroot(value.denominator, n)
    if not (num_exact and den_exact):
        return None
    return Fraction(int(num), int(den))


def is_rational_square(value: Fraction) -> bool:
    return rational_root(value, 2) is not None


def isomorphism(E1: WeierstrassModel, E2: WeierstrassModel) -> Optional[Transformation]:
    """A transformation taking E1 to E2 over Q, or None."""
    if E1.j_invariant != E2.j_invariant:
        return None
    S1, T1 = short_model(E1)
    S2, T2 = short_model(E2)
    A1, B1, A2, B2 = S1.a4, S1.a6, S2.a4, S2.a6
    if A1 == 0:
        u = rational_root(B1 / B2, 6)
    elif B1 == 0:
        u = rational_root(A1 / A2, 4)
    else:
        u = rational_root((A2 * B1) / (A1 * B2), 2)
    if u is None or u == 0:
        return None
    if A1 != A2 * u ** 4 or B1 != B2 * u ** 6:
        return None
    return T1.then(Transformation(u)).then(T2.inverse())


def is_isomorphic(E1: WeierstrassModel, E2: WeierstrassModel) -> bool:
    return isomorphism(E1, E2) is not None


def twist(E: WeierstrassModel, d) -> WeierstrassModel:
    """Quadratic twist by d, returned as a short model."""
    d = as_rational(d)
    if d == 0:
        raise UnsupportedInputError("twist by zero")
    A, B = E.short_coefficients
    return WeierstrassModel.from_short(A * d * d, B * d ** 3)


@dataclass(frozen=True)
class CMRecord:
    j: Fraction
    disc_K: int


CM_J_INVARIANTS: Dict[Fraction, int] = {
    Fraction(0): -3,
    Fraction(2 ** 4 * 3 ** 3 * 5 ** 3): -3,
    Fraction(-(2 ** 15) * 3 * 5 ** 3): -3,
    Fraction(2 ** 6 * 3 ** 3): -4,
    Fraction(2 ** 3 * 3 ** 3 * 11 ** 3): -4,
    Fraction(-(3 ** 3) * 5 ** 3): -7,
    Fraction(3 ** 3 * 5 ** 3 * 17 ** 3): -7,
    Fraction(2 ** 6 * 5 ** 3): -8,
    Fraction(-(2 ** 15)): -11,
    Fraction(-(2 ** 15) * 3 ** 3): -19,
    Fraction(-(2 ** 18) * 3 ** 3 * 5 ** 3): -43,
    Fraction(-(2 ** 15) * 3 ** 3 * 5 ** 3 * 11 ** 3): -67,
    Fraction(-(2 ** 18) * 3 ** 3 * 5 ** 3 * 23 ** 3 * 29 ** 3): -163,
}


def cm_lookup(j) -> Optional[CMRecord]:
    j = as_rational(j)
    disc = CM_J_INVARIANTS.get(j)
    return None if disc is None else CMRecord(j, disc)


def _reduce(value: Fraction, p: int) -> int:
    return value.numerator * pow(value.denominator, -1, p) % p


def is_good_prime(E: WeierstrassModel, p: int) -> bool:
    """p >= 5 is prime and the derived short model reduces to a nonsingular cubic mod p."""
    if p < 5 or not isprime(p):
        return False
    A, B = E.short_coefficients
    if A.denominator % p == 0 or B.denominator % p == 0:
        return False
    return (4 * _reduce(A, p) ** 3 + 27 * _reduce(B, p) ** 2) % p != 0


def frobenius_trace(E: WeierstrassModel, p: int) -> int:
    """a_p = p + 1 - #E(F_p) for a good prime p >= 5."""
    if not is_good_prime(E, p):
        raise UnsupportedInputError(f"p={p} is not a good prime for {E}")
    A, B = E.short_coefficients
    a, b = _reduce(A, p), _reduce(B, p)
    squares: Dict[int, int] = {}
    for y in range(p):
        key = y * y % p
        squares[key] = squares.get(key, 0) + 1
    affine = sum(squares.get((x ** 3 + a * x + b) % p, 0) for x in range(p))
    return p - affine


def count_points_mod_p(E: WeierstrassModel, p: int) -> int:
    return p + 1 - frobenius_trace(E, p)


def good_primes(E: WeierstrassModel, candidates: Iterable[int]) -> Iterable[int]:
    return (p for p in candidates if is_good_prime(E, p))
