"""Factorization of integer polynomials over Q.

Zassenhaus: squarefree decomposition, factorization modulo a small prime,
multifactor Hensel lifting past a Mignotte bound, then subset recombination
with exact trial division.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import List, Tuple, Union

from sympy import nextprime
from sympy.polys.domains import ZZ
from sympy.polys.factortools import dup_zz_hensel_lift, dup_zz_mignotte_bound
from sympy.polys.galoistools import (
    gf_ddf_zassenhaus,
    gf_factor_sqf,
    gf_from_int_poly,
    gf_monic,
    gf_mul,
    gf_sqf_p,
    gf_to_int_poly,
)

from src.algebra.qpoly import (
    IntegerPolynomial,
    RationalPolynomial,
    squarefree_decomposition,
)
from src.config import settings
from src.utils.exceptions import InvariantViolationError, UnsupportedInputError
from src.utils.logger import logger

# Upper limit on primes scanned while looking for a squarefree reduction.
_MAX_PRIME_SCAN = 500


def modular_factor_count(f: IntegerPolynomial, p: int) -> int:
    """Number of irreducible factors of f mod p, from distinct-degree factorization."""
    _, monic = gf_monic(gf_from_int_poly(f.dense(), p), p, ZZ)
    return sum((len(g) - 1) // d for g, d in gf_ddf_zassenhaus(monic, p, ZZ))


def _admissible_primes(f: IntegerPolynomial):
    lc = f.leading_coefficient
    p = 3
    for _ in range(_MAX_PRIME_SCAN):
        p = int(nextprime(p))
        if lc % p == 0:
            continue
        if gf_sqf_p(gf_from_int_poly(f.dense(), p), p, ZZ):
            yield p


def is_squarefree_mod_small_prime(f: IntegerPolynomial, tries: int = 8) -> bool:
    """True when some small prime not dividing lc(f) gives a squarefree reduction."""
    lc = f.leading_coefficient
    p, checked = 3, 0
    while checked < tries:
        p = int(nextprime(p))
        if lc % p == 0:
            continue
        checked += 1
        if gf_sqf_p(gf_from_int_poly(f.dense(), p), p, ZZ):
            return True
    return False


def choose_prime(f: IntegerPolynomial) -> Tuple[int, int]:
    """Prime > 3 with a squarefree reduction minimizing the modular factor count.

    The scan stops after factor_prime_trials primes, or earlier once
    factor_prime_patience primes in a row fail to lower the count.
    """
    best = None
    stale = 0
    for trial, p in enumerate(_admissible_primes(f)):
        if trial >= settings.factor_prime_trials or stale >= settings.factor_prime_patience:
            break
        count = modular_factor_count(f, p)
        if best is None or count < best[1]:
            best, stale = (p, count), 0
        else:
            stale += 1
        if count == 1:
            break
    if best is None:
        raise InvariantViolationError(
            "squarefree-reduction", f"no admissible prime for polynomial of degree {f.degree}"
        )
    return best


def _lifting_exponent(f: IntegerPolynomial, p: int) -> int:
    bound = abs(f.leading_coefficient) * int(dup_zz_mignotte_bound([ZZ(c) for c in f.dense()], ZZ))
    exponent, modulus = 1, p
    while modulus <= 2 * bound + 1:
        exponent += 1
        modulus *= p
    return exponent


def _hensel_lift(f: IntegerPolynomial, p: int, modular: List[List[int]]) -> Tuple[int, List[IntegerPolynomial]]:
    exponent = _lifting_exponent(f, p)
    lifted = dup_zz_hensel_lift(
        ZZ(p),
        [ZZ(c) for c in f.dense()],
        [[ZZ(c) for c in g] for g in modular],
        exponent,
        ZZ,
    )
    modulus = p ** exponent
    return modulus, [_symmetric(IntegerPolynomial.from_dense(g), modulus) for g in lifted]


def _symmetric(f: IntegerPolynomial, modulus: int) -> IntegerPolynomial:
    half = modulus // 2
    out = []
    for c in f.coefficients:
        c %= modulus
        out.append(c - modulus if c > half else c)
    return IntegerPolynomial(out)


def _modular_factors(f: IntegerPolynomial, p: int) -> List[List[int]]:
    _, factors = gf_factor_sqf(gf_from_int_poly(f.dense(), p), p, ZZ)
    return [gf_to_int_poly(g, p) for g in factors]


def zassenhaus(f: IntegerPolynomial) -> List[IntegerPolynomial]:
    """Irreducible factors of a primitive squarefree f with positive leading coefficient."""
    if f.degree <= 1:
        return [f]
    p, count = choose_prime(f)
    logger.debug(f"Factoring degree {f.degree}: p={p}, {count} modular factors")
    if count == 1:
        return [f]

    modulus, lifted = _hensel_lift(f, p, _modular_factors(f, p))

    factors: List[IntegerPolynomial] = []
    current = f
    remaining = list(range(len(lifted)))
    size = 1
    while 2 * size <= len(remaining):
        for subset in combinations(remaining, size):
            candidate = IntegerPolynomial((current.leading_coefficient,))
            for i in subset:
                candidate = _symmetric(candidate * lifted[i], modulus)
            candidate = candidate.primitive_part()
            c0, f0 = candidate.coefficients[0], current.coefficients[0]
            if f0 != 0 and (c0 == 0 or f0 % c0):
                continue
            quotient = current.exact_divide(candidate)
            if quotient is None:
                continue
            factors.append(candidate)
            current = quotient.primitive_part()
            remaining = [i for i in remaining if i not in subset]
            break
        else:
            size += 1
    if current.degree > 0:
        factors.append(current.primitive_part())
    return factors


def linear_integer_factors(f: IntegerPolynomial) -> List[IntegerPolynomial]:
    """Primitive linear factors b*x - a of a primitive squarefree f."""
    found: List[IntegerPolynomial] = []
    if f.degree < 1:
        return found
    if f.coefficients[0] == 0:
        found.append(IntegerPolynomial((0, 1)))
        f = IntegerPolynomial(f.coefficients[1:])
    if f.degree < 1:
        return found
    if f.degree == 1:
        return found + [f.primitive_part()]

    p = next(_admissible_primes(f))
    modular = _modular_factors(f, p)
    linear = [g for g in modular if len(g) == 2]
    if not linear:
        return found
    nonlinear = [g for g in modular if len(g) > 2]
    groups = list(linear)
    if nonlinear:
        product = [1]
        for g in nonlinear:
            product = gf_mul(product, [c % p for c in g], p, ZZ)
        groups.append(gf_to_int_poly(product, p))

    modulus, lifted = _hensel_lift(f, p, groups)
    lc = f.leading_coefficient
    for g in lifted[: len(linear)]:
        candidate = _symmetric(IntegerPolynomial((lc,)) * g, modulus).primitive_part()
        root = Fraction(-candidate.coefficients[0], candidate.coefficients[1])
        if f.evaluate(root) == 0:
            found.append(candidate)
    return found


def factor_over_Q(f: Union[IntegerPolynomial, RationalPolynomial]) -> List[Tuple[IntegerPolynomial, int]]:
    """Irreducible primitive factors with multiplicities, sorted by degree then coefficients."""
    rational = f.to_rational() if isinstance(f, IntegerPolynomial) else f
    if rational.is_zero:
        raise UnsupportedInputError("cannot factor the zero polynomial")
    if rational.degree > settings.factor_degree_guard:
        raise UnsupportedInputError(
            f"degree {rational.degree} exceeds factoring guard {settings.factor_degree_guard}"
        )
    out: List[Tuple[IntegerPolynomial, int]] = []
    for part, multiplicity in squarefree_decomposition(rational):
        _, primitive = part.to_integer()
        out.extend((g, multiplicity) for g in zassenhaus(primitive))
    return sorted(out, key=lambda item: (item[0].degree, item[0].coefficients, item[1]))


def factorization_unit(f: Union[IntegerPolynomial, RationalPolynomial], factors: List[Tuple[IntegerPolynomial, int]]) -> Fraction:
    """The rational unit u with f = u * prod(g**m)."""
    rational = f.to_rational() if isinstance(f, IntegerPolynomial) else f
    lead = Fraction(1)
    for g, m in factors:
        lead *= Fraction(g.leading_coefficient) ** m
    return rational.leading_coefficient / lead
