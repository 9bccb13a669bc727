"""Exact univariate polynomials over Q and Z.

Coefficient sequences are stored in ascending degree order. Both polynomial
types are immutable and hashable.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, List, Sequence, Set, Tuple, Union

from src.utils.exceptions import UnsupportedInputError

Rational = Fraction
Scalar = Union[int, Fraction]


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def _trim(coefficients: List) -> Tuple:
    while coefficients and coefficients[-1] == 0:
        coefficients.pop()
    return tuple(coefficients)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class RationalPolynomial:
    __slots__ = ("_coeffs",)

    def __init__(self, coefficients: Iterable = ()):
        self._coeffs: Tuple[Fraction, ...] = _trim([as_rational(c) for c in coefficients])

    @classmethod
    def zero(cls) -> "RationalPolynomial":
        return cls()

    @classmethod
    def one(cls) -> "RationalPolynomial":
        return cls((1,))

    @classmethod
    def x(cls) -> "RationalPolynomial":
        return cls((0, 1))

    @classmethod
    def constant(cls, value: Scalar) -> "RationalPolynomial":
        return cls((value,))

    @classmethod
    def from_roots(cls, roots: Iterable[Scalar]) -> "RationalPolynomial":
        result = cls.one()
        for r in roots:
            result = result * cls((-as_rational(r), 1))
        return result

    @property
    def coefficients(self) -> Tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def leading_coefficient(self) -> Fraction:
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def __getitem__(self, index: int) -> Fraction:
        if 0 <= index < len(self._coeffs):
            return self._coeffs[index]
        return Fraction(0)

    @staticmethod
    def _coerce(other) -> "RationalPolynomial":
        if isinstance(other, RationalPolynomial):
            return other
        if isinstance(other, IntegerPolynomial):
            return other.to_rational()
        return RationalPolynomial((other,))

    def __add__(self, other) -> "RationalPolynomial":
        other = self._coerce(other)
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RationalPolynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "RationalPolynomial":
        return RationalPolynomial(-c for c in self._coeffs)

    def __sub__(self, other) -> "RationalPolynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RationalPolynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RationalPolynomial":
        if not isinstance(other, (RationalPolynomial, IntegerPolynomial)):
            c = as_rational(other)
            return RationalPolynomial(c * a for a in self._coeffs)
        other = self._coerce(other)
        a, b = self._coeffs, other._coeffs
        if not a or not b:
            return RationalPolynomial()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "RationalPolynomial":
        if exponent < 0:
            raise ValueError("negative exponent")
        result, base = RationalPolynomial.one(), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __divmod__(self, other) -> Tuple["RationalPolynomial", "RationalPolynomial"]:
        other = self._coerce(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        remainder = list(self._coeffs)
        dlen = len(other._coeffs)
        if len(remainder) < dlen:
            return RationalPolynomial(), self
        lead = other._coeffs[-1]
        quotient = [Fraction(0)] * (len(remainder) - dlen + 1)
        for shift in range(len(remainder) - dlen, -1, -1):
            c = remainder[shift + dlen - 1] / lead
            quotient[shift] = c
            if c:
                for i, dc in enumerate(other._coeffs):
                    remainder[shift + i] -= c * dc
        return RationalPolynomial(quotient), RationalPolynomial(remainder[: dlen - 1])

    def __floordiv__(self, other) -> "RationalPolynomial":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "RationalPolynomial":
        return divmod(self, other)[1]

    def divides(self, other: "RationalPolynomial") -> bool:
        return (other % self).is_zero

    def exact_quotient(self, other) -> "RationalPolynomial":
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ArithmeticError("polynomial division is not exact")
        return q

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalPolynomial):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self._coeffs == RationalPolynomial((other,))._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def derivative(self) -> "RationalPolynomial":
        return RationalPolynomial(i * c for i, c in enumerate(self._coeffs) if i)

    def evaluate(self, value):
        result = 0
        for c in reversed(self._coeffs):
            result = result * value + c
        return result

    __call__ = evaluate

    def compose(self, inner: "RationalPolynomial") -> "RationalPolynomial":
        result = RationalPolynomial()
        for c in reversed(self._coeffs):
            result = result * inner + c
        return result

    def monic(self) -> "RationalPolynomial":
        if self.is_zero:
            return self
        return self * (1 / self.leading_coefficient)

    def scale_variable(self, factor: Scalar) -> "RationalPolynomial":
        """Return f(factor * x)."""
        factor = as_rational(factor)
        return RationalPolynomial(c * factor ** i for i, c in enumerate(self._coeffs))

    def to_integer(self) -> Tuple[Fraction, "IntegerPolynomial"]:
        """Split into (unit, primitive integer polynomial with positive leading coefficient)."""
        if self.is_zero:
            return Fraction(0), IntegerPolynomial()
        denom = reduce(_lcm, (c.denominator for c in self._coeffs), 1)
        ints = [int(c * denom) for c in self._coeffs]
        content = reduce(gcd, ints, 0)
        if ints[-1] < 0:
            content = -content
        primitive = IntegerPolynomial(i // content for i in ints)
        return Fraction(content, denom), primitive

    def __repr__(self) -> str:
        return f"RationalPolynomial({format_terms(self._coeffs)})"

    def __str__(self) -> str:
        return format_terms(self._coeffs)


class IntegerPolynomial:
    __slots__ = ("_coeffs",)

    def __init__(self, coefficients: Iterable[int] = ()):
        self._coeffs: Tuple[int, ...] = _trim([int(c) for c in coefficients])

    @classmethod
    def from_dense(cls, dense: Sequence) -> "IntegerPolynomial":
        """Build from a highest-degree-first coefficient list."""
        return cls(int(c) for c in reversed(list(dense)))

    def dense(self) -> List[int]:
        return list(reversed(self._coeffs))

    @property
    def coefficients(self) -> Tuple[int, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def leading_coefficient(self) -> int:
        return self._coeffs[-1] if self._coeffs else 0

    @property
    def content(self) -> int:
        return reduce(gcd, self._coeffs, 0) or 1

    def primitive_part(self) -> "IntegerPolynomial":
        if self.is_zero:
            return self
        c = self.content
        if self._coeffs[-1] < 0:
            c = -c
        return IntegerPolynomial(a // c for a in self._coeffs)

    def to_rational(self) -> RationalPolynomial:
        return RationalPolynomial(self._coeffs)

    def evaluate(self, value):
        result = 0
        for c in reversed(self._coeffs):
            result = result * value + c
        return result

    __call__ = evaluate

    def __add__(self, other: "IntegerPolynomial") -> "IntegerPolynomial":
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntegerPolynomial(out)

    def __neg__(self) -> "IntegerPolynomial":
        return IntegerPolynomial(-c for c in self._coeffs)

    def __sub__(self, other: "IntegerPolynomial") -> "IntegerPolynomial":
        return self + (-other)

    def derivative(self) -> "IntegerPolynomial":
        return IntegerPolynomial(i * c for i, c in enumerate(self._coeffs) if i)

    def __mul__(self, other: "IntegerPolynomial") -> "IntegerPolynomial":
        if isinstance(other, int):
            return IntegerPolynomial(other * c for c in self._coeffs)
        a, b = self._coeffs, other._coeffs
        if not a or not b:
            return IntegerPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return IntegerPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "IntegerPolynomial":
        result = IntegerPolynomial((1,))
        for _ in range(exponent):
            result = result * self
        return result

    def exact_divide(self, divisor: "IntegerPolynomial"):
        """Quotient over Z, or None when divisor does not divide self in Z[x]."""
        if divisor.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        remainder = list(self._coeffs)
        dlen = len(divisor._coeffs)
        if len(remainder) < dlen:
            return None if remainder else IntegerPolynomial()
        lead = divisor._coeffs[-1]
        quotient = [0] * (len(remainder) - dlen + 1)
        for shift in range(len(remainder) - dlen, -1, -1):
            top = remainder[shift + dlen - 1]
            if top % lead:
                return None
            c = top // lead
            quotient[shift] = c
            if c:
                for i, dc in enumerate(divisor._coeffs):
                    remainder[shift + i] -= c * dc
        if any(remainder[: dlen - 1]):
            return None
        return IntegerPolynomial(quotient)

    def __eq__(self, other) -> bool:
        if isinstance(other, IntegerPolynomial):
            return self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("Z", self._coeffs))

    def __repr__(self) -> str:
        return f"IntegerPolynomial({format_terms(self._coeffs)})"

    def __str__(self) -> str:
        return format_terms(self._coeffs)


def format_terms(coefficients: Sequence) -> str:
    if not coefficients:
        return "0"
    parts = []
    for i in range(len(coefficients) - 1, -1, -1):
        c = coefficients[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if i == 0:
            body = str(mag)
        else:
            power = "x" if i == 1 else f"x^{i}"
            body = power if mag == 1 else f"{mag}*{power}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


PolynomialLike = Union[RationalPolynomial, IntegerPolynomial]


def _as_rational_poly(f: PolynomialLike) -> RationalPolynomial:
    return f.to_rational() if isinstance(f, IntegerPolynomial) else f


def poly_gcd(f: PolynomialLike, g: PolynomialLike) -> RationalPolynomial:
    """Monic gcd over Q; gcd(0, 0) is 0."""
    a, b = _as_rational_poly(f).monic(), _as_rational_poly(g).monic()
    while not b.is_zero:
        a, b = b, (a % b).monic()
    return a.monic()


def squarefree_decomposition(f: PolynomialLike) -> List[Tuple[RationalPolynomial, int]]:
    """Yun's algorithm: monic squarefree, pairwise coprime a_i with f = c * prod a_i^i."""
    f = _as_rational_poly(f)
    if f.is_zero:
        raise UnsupportedInputError("squarefree decomposition of the zero polynomial")
    f = f.monic()
    if f.degree < 1:
        return []
    df = f.derivative()
    a0 = poly_gcd(f, df)
    b = f.exact_quotient(a0)
    c = df.exact_quotient(a0)
    d = c - b.derivative()
    out: List[Tuple[RationalPolynomial, int]] = []
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        if a.degree > 0:
            out.append((a, i))
        b = b.exact_quotient(a)
        c = d.exact_quotient(a)
        d = c - b.derivative()
        i += 1
    return out


def squarefree_part(f: PolynomialLike) -> RationalPolynomial:
    f = _as_rational_poly(f)
    if f.is_zero:
        raise UnsupportedInputError("squarefree part of the zero polynomial")
    f = f.monic()
    if f.degree < 1:
        return RationalPolynomial.one()
    return f.exact_quotient(poly_gcd(f, f.derivative()))


def rational_roots(f: PolynomialLike) -> Set[Fraction]:
    """All rational roots, via p-adic lifting of the modular linear factors."""
    from src.algebra.factor import is_squarefree_mod_small_prime, linear_integer_factors

    f = _as_rational_poly(f)
    if f.is_zero:
        raise UnsupportedInputError("rational roots of the zero polynomial")
    if f.degree < 1:
        return set()
    _, primitive = f.to_integer()
    if not is_squarefree_mod_small_prime(primitive):
        _, primitive = squarefree_part(f).to_integer()
    return {Fraction(-lin.coefficients[0], lin.coefficients[1]) for lin in linear_integer_factors(primitive)}
