"""Rational prime-degree isogenies and their codomains (Velu / Kohel)."""
from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Type

from sympy import nextprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_from_int_poly, gf_gcd

from src.algebra.factor import factor_over_Q
from src.algebra.qpoly import IntegerPolynomial, RationalPolynomial, poly_gcd, rational_roots
from src.config import settings
from src.curves.torsion import division_cache
from src.curves.weier import WeierstrassModel, frobenius_trace, is_good_prime, short_model
from src.models.enums import KernelSource
from src.utils.exceptions import UnsupportedInputError
from src.utils.logger import logger

GENUS_ZERO_PRIMES = (2, 3, 5, 7, 13)
SPORADIC_PRIMES = (11, 17, 19, 37, 43, 67, 163)
ADMISSIBLE_PRIMES = tuple(sorted(GENUS_ZERO_PRIMES + SPORADIC_PRIMES))


@dataclass(frozen=True)
class KernelDescriptor:
    degree: int
    kernel_polynomial: RationalPolynomial
    source: KernelSource = KernelSource.DIVISION_POLYNOMIAL

    def __post_init__(self):
        if self.degree not in ADMISSIBLE_PRIMES:
            raise UnsupportedInputError(f"{self.degree} is not a rational isogeny prime over Q")
        f = self.kernel_polynomial
        expected = 1 if self.degree == 2 else (self.degree - 1) // 2
        if f.degree != expected or f.leading_coefficient != 1:
            raise UnsupportedInputError(f"kernel polynomial {f} has wrong shape for degree {self.degree}")


@dataclass(frozen=True)
class PrimeIsogeny:
    domain: WeierstrassModel
    kernel: KernelDescriptor
    codomain: WeierstrassModel

    @property
    def degree(self) -> int:
        return self.kernel.degree


def _power_sums(f: RationalPolynomial) -> Tuple[Fraction, Fraction, Fraction]:
    d = f.degree
    e1 = -f[d - 1] if d >= 1 else Fraction(0)
    e2 = f[d - 2] if d >= 2 else Fraction(0)
    e3 = -f[d - 3] if d >= 3 else Fraction(0)
    p1 = e1
    p2 = e1 * p1 - 2 * e2
    p3 = e1 * p2 - e2 * p1 + 3 * e3
    return p1, p2, p3


def _codomain_coefficients(A: Fraction, B: Fraction, f: RationalPolynomial, ell: int) -> Tuple[Fraction, Fraction]:
    if ell == 2:
        r = -f[0]
        t = 3 * r * r + A
        w = r * t
    else:
        d = f.degree
        p1, p2, p3 = _power_sums(f)
        t = 6 * p2 + 2 * A * d
        w = 10 * p3 + 6 * A * p1 + 4 * B * d
    return A - 5 * t, B - 7 * w


def _x_map_numerator(A: Fraction, B: Fraction, f: RationalPolynomial, ell: int) -> RationalPolynomial:
    """N with phi_x = N / f^2."""
    x = RationalPolynomial.x()
    if ell == 2:
        r = -f[0]
        return x * f * f + f * (3 * r * r + A)
    df = f.derivative()
    h1 = (RationalPolynomial((2 * A, 0, 6)) * df) % f
    h2 = (RationalPolynomial((B, A, 0, 1)) * 4 * df) % f
    return x * f * f + h1 * f - h2.derivative() * f + h2 * df


def _integral(f: RationalPolynomial) -> Optional[IntegerPolynomial]:
    if any(c.denominator != 1 for c in f.coefficients):
        return None
    return IntegerPolynomial(c.numerator for c in f.coefficients)


def _coprime(N: RationalPolynomial, f: RationalPolynomial) -> bool:
    """gcd(N, f) = 1, decided modulo a prime when both are monic over Z."""
    zN, zf = _integral(N), _integral(f)
    if zN is None or zf is None:
        return poly_gcd(N, f).degree == 0
    p = 2 ** 61 - 1
    for _ in range(3):
        if gf_gcd(gf_from_int_poly(zN.dense(), p), gf_from_int_poly(zf.dense(), p), p, ZZ) == [1]:
            return True
        p = int(nextprime(p))
    return poly_gcd(N, f).degree == 0


def _morphism_identity(cubic, N, f, A2, B2) -> bool:
    """cubic * slope^2 == N^3 + A2 N f^4 + B2 f^6, the x-map N/f^2 lifted to the codomain."""
    slope = N.derivative() * f - N * f.derivative() * 2
    f2 = f * f
    f4 = f2 * f2
    return cubic * slope * slope == N * N * N + N * f4 * A2 + f4 * f2 * B2


def validate_kernel(E: WeierstrassModel, f: RationalPolynomial, ell: int) -> bool:
    """Exact check that f is the kernel polynomial of an ell-isogeny out of E.

    For odd ell the Velu x-map N/f^2 must be in lowest terms and satisfy the
    codomain equation; that makes it a degree-ell isogeny whose kernel is cut out
    by f, so the ell-division polynomial never has to be built.
    """
    short, _ = short_model(E)
    A, B = short.a4, short.a6
    cubic = RationalPolynomial((B, A, 0, 1))
    expected = 1 if ell == 2 else (ell - 1) // 2
    if f.degree != expected or f.leading_coefficient != 1:
        return False
    if ell == 2:
        return f.divides(cubic) and 4 * A ** 3 + 27 * B ** 2 != 0
    A2, B2 = _codomain_coefficients(A, B, f, ell)
    if 4 * A2 ** 3 + 27 * B2 ** 2 == 0:
        return False
    N = _x_map_numerator(A, B, f, ell)
    if not _coprime(N, f):
        logger.debug(f"Kernel candidate {f} shares a factor with its x-map numerator")
        return False
    polys = [_integral(g) for g in (cubic, N, f)]
    if all(g is not None for g in polys) and A2.denominator == 1 and B2.denominator == 1:
        return _morphism_identity(*polys, int(A2), int(B2))
    return _morphism_identity(cubic, N, f, A2, B2)


def velu_codomain(E: WeierstrassModel, kernel: KernelDescriptor, validate: bool = True) -> WeierstrassModel:
    if validate and not validate_kernel(E, kernel.kernel_polynomial, kernel.degree):
        raise UnsupportedInputError(
            f"{kernel.kernel_polynomial} is not a {kernel.degree}-isogeny kernel on {E}"
        )
    short, _ = short_model(E)
    A2, B2 = _codomain_coefficients(short.a4, short.a6, kernel.kernel_polynomial, kernel.degree)
    return WeierstrassModel.from_short(A2, B2)


def two_isogeny_kernels(E: WeierstrassModel) -> List[KernelDescriptor]:
    short, _ = short_model(E)
    cubic = division_cache(short.a4, short.a6).cubic
    return [
        KernelDescriptor(2, RationalPolynomial((-r, 1)), KernelSource.TWO_TORSION)
        for r in sorted(rational_roots(cubic))
    ]


def passes_frobenius_sieve(E: WeierstrassModel, ell: int, primes: Optional[Sequence[int]] = None) -> bool:
    """False when some good prime p rules out a rational ell-isogeny.

    A rational ell-isogeny forces a_p^2 - 4p to be a square (or zero) mod ell.
    """
    primes = settings.sieve_primes if primes is None else primes
    squares = {(k * k) % ell for k in range(ell)}
    for p in primes:
        if p == ell or not is_good_prime(E, p):
            continue
        a_p = frobenius_trace(E, p)
        if (a_p * a_p - 4 * p) % ell not in squares:
            return False
    return True


def _degree_combinations(factors: List[RationalPolynomial], target: int) -> List[RationalPolynomial]:
    products: List[RationalPolynomial] = []

    def walk(start: int, product: RationalPolynomial, total: int):
        if total == target:
            products.append(product)
            return
        for i in range(start, len(factors)):
            g = factors[i]
            if total + g.degree <= target:
                walk(i + 1, product * g, total + g.degree)

    walk(0, RationalPolynomial.one(), 0)
    return products


def odd_kernel_polynomials(E: WeierstrassModel, ell: int) -> List[KernelDescriptor]:
    if ell not in (3, 5, 7, 13):
        raise UnsupportedInputError(f"odd kernel search supports 3, 5, 7, 13; got {ell}")
    if ell > 3 and not passes_frobenius_sieve(E, ell):
        return []
    short, _ = short_model(E)
    psi = division_cache(short.a4, short.a6).x_polynomial(ell)
    half = (ell - 1) // 2
    logger.debug(f"Factoring psi_{ell} (degree {psi.degree}) for {E}")
    factors = [g.to_rational().monic() for g, _ in factor_over_Q(psi) if g.degree <= half]
    kernels = []
    for candidate in _degree_combinations(factors, half):
        if validate_kernel(E, candidate, ell):
            kernels.append(KernelDescriptor(ell, candidate, KernelSource.DIVISION_POLYNOMIAL))
    return kernels


class IsogenySource(ABC):
    """Produces the rational isogenies of some family of prime degrees."""

    degrees: Tuple[int, ...] = ()

    @abstractmethod
    def isogenies(self, E: WeierstrassModel, ell: int) -> List[PrimeIsogeny]:
        pass

    def supports(self, ell: int) -> bool:
        return ell in self.degrees


class TwoTorsionSource(IsogenySource):
    degrees = (2,)

    def isogenies(self, E: WeierstrassModel, ell: int) -> List[PrimeIsogeny]:
        return [PrimeIsogeny(E, k, velu_codomain(E, k)) for k in two_isogeny_kernels(E)]


class DivisionPolynomialSource(IsogenySource):
    degrees = (3, 5, 7, 13)

    def isogenies(self, E: WeierstrassModel, ell: int) -> List[PrimeIsogeny]:
        return [PrimeIsogeny(E, k, velu_codomain(E, k)) for k in odd_kernel_polynomials(E, ell)]


def source_map() -> Dict[int, Type[IsogenySource]]:
    from src.curves.sporadic import SporadicSource

    mapping: Dict[int, Type[IsogenySource]] = {}
    for cls in (TwoTorsionSource, DivisionPolynomialSource, SporadicSource):
        for ell in cls.degrees:
            mapping[ell] = cls
    return mapping


def isogenies_of_degree(E: WeierstrassModel, ell: int) -> List[PrimeIsogeny]:
    cls = source_map().get(ell)
    if cls is None:
        raise UnsupportedInputError(f"no rational {ell}-isogenies exist over Q")
    return cls().isogenies(E, ell)


def all_prime_isogenies(E: WeierstrassModel, degrees: Optional[Iterable[int]] = None) -> List[PrimeIsogeny]:
    """Every rational prime-degree isogeny out of E, in increasing degree."""
    from src.curves.sporadic import sporadic_isogenies

    wanted = ADMISSIBLE_PRIMES if degrees is None else tuple(sorted(set(degrees)))
    found: List[PrimeIsogeny] = []
    for ell in wanted:
        if ell in GENUS_ZERO_PRIMES:
            found.extend(isogenies_of_degree(E, ell))
    if any(ell in SPORADIC_PRIMES for ell in wanted):
        found.extend(phi for phi in sporadic_isogenies(E) if phi.degree in wanted)
    return found
