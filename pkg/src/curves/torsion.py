"""Division polynomials and rational torsion subgroups."""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Dict, List, Set, Tuple

from src.algebra.qpoly import RationalPolynomial, rational_roots
from src.curves.weier import (
    INFINITY,
    AffinePoint,
    WeierstrassModel,
    add_points,
    rational_root,
    scalar_multiple,
    short_model,
)
from src.utils.exceptions import InvariantViolationError, UnsupportedInputError

MAZUR_GROUPS = frozenset(
    [(n,) for n in (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12)]
    + [(2, 2), (2, 4), (2, 6), (2, 8)]
)
EXACT_ORDER_SEARCH = (2, 3, 4, 5, 7, 8, 9)


@dataclass(frozen=True)
class TorsionStructure:
    structure: Tuple[int, ...]
    generators: Tuple[AffinePoint, ...] = ()

    @property
    def is_bicyclic(self) -> bool:
        return len(self.structure) == 2

    @property
    def order(self) -> int:
        return reduce(lambda a, b: a * b, self.structure, 1)

    @property
    def label(self) -> str:
        return "[" + ",".join(str(n) for n in self.structure) + "]"

    @property
    def has_two_torsion(self) -> bool:
        return self.order % 2 == 0

    def __str__(self) -> str:
        return self.label


def parse_group_label(label: str) -> Tuple[int, ...]:
    body = label.strip().strip("[]")
    structure = tuple(int(part) for part in body.split(",")) if body else (1,)
    if structure not in MAZUR_GROUPS:
        raise UnsupportedInputError(f"{label} is not a torsion group over Q")
    return structure


class DivisionPolynomialCache:
    """Reduced division polynomials f_n of Y^2 = X^3 + AX + B.

    f_n = psi_n for odd n and psi_n / (2y) for even n, so every f_n is a
    polynomial in x alone.
    """

    def __init__(self, A: Fraction, B: Fraction):
        self.A = Fraction(A)
        self.B = Fraction(B)
        A, B = self.A, self.B
        self.cubic = RationalPolynomial((B, A, 0, 1))
        self.four_cubic = self.cubic * 4
        self._lock = threading.Lock()
        self._table: Dict[int, RationalPolynomial] = {
            0: RationalPolynomial.zero(),
            1: RationalPolynomial.one(),
            2: RationalPolynomial.one(),
            3: RationalPolynomial((-A * A, 12 * B, 6 * A, 0, 3)),
            4: RationalPolynomial((-8 * B * B - A ** 3, -4 * A * B, -5 * A * A, 20 * B, 5 * A, 0, 1)) * 2,
        }

    def reduced(self, n: int) -> RationalPolynomial:
        if n < 0:
            raise UnsupportedInputError("negative division polynomial index")
        with self._lock:
            return self._compute(n)

    def _compute(self, n: int) -> RationalPolynomial:
        cached = self._table.get(n)
        if cached is not None:
            return cached
        f = self._compute
        F2 = self.four_cubic * self.four_cubic
        m = n // 2
        if n % 2:
            if m % 2 == 0:
                value = F2 * f(m + 2) * f(m) ** 3 - f(m - 1) * f(m + 1) ** 3
            else:
                value = f(m + 2) * f(m) ** 3 - F2 * f(m - 1) * f(m + 1) ** 3
        else:
            value = f(m) * (f(m + 2) * f(m - 1) ** 2 - f(m - 2) * f(m + 1) ** 2)
        self._table[n] = value
        return value

    def x_polynomial(self, n: int) -> RationalPolynomial:
        """Polynomial whose roots are the x-coordinates of the nonzero n-torsion points."""
        if n < 1:
            raise UnsupportedInputError("division polynomial index must be >= 1")
        value = self.reduced(n)
        return value if n % 2 else self.four_cubic * value


@lru_cache(maxsize=256)
def division_cache(A: Fraction, B: Fraction) -> DivisionPolynomialCache:
    return DivisionPolynomialCache(A, B)


def division_polynomial(E: WeierstrassModel, n: int) -> RationalPolynomial:
    short, _ = short_model(E)
    return division_cache(short.a4, short.a6).x_polynomial(n)


def _prime_of(q: int) -> int:
    return next(p for p in (2, 3, 5, 7) if q % p == 0)


def points_of_exact_order(E: WeierstrassModel, q: int) -> Set[AffinePoint]:
    """Rational points of exact order q on E, for the prime powers inside Mazur's groups."""
    if q not in EXACT_ORDER_SEARCH:
        raise UnsupportedInputError(f"exact-order search supports q in {EXACT_ORDER_SEARCH}, got {q}")
    short, transformation = short_model(E)
    cache = division_cache(short.a4, short.a6)
    back = transformation.inverse()

    candidates = rational_roots(cache.x_polynomial(q))
    smaller = q // _prime_of(q)
    if smaller > 1:
        excluded = cache.x_polynomial(smaller)
        candidates = {r for r in candidates if excluded.evaluate(r) != 0}

    points: Set[AffinePoint] = set()
    for x in candidates:
        y = rational_root(cache.cubic.evaluate(x), 2)
        if y is None:
            continue
        for sign in ((1,) if y == 0 else (1, -1)):
            points.add(back.map_point(AffinePoint(x, sign * y)))
    return points


def _pick(points: Set[AffinePoint]) -> AffinePoint:
    return min(points, key=lambda P: (abs(P.x), P.x, P.y))


def has_exact_order(E: WeierstrassModel, P: AffinePoint, n: int) -> bool:
    if scalar_multiple(E, n, P) != INFINITY:
        return False
    primes = [p for p in (2, 3, 5, 7, 11) if n % p == 0]
    return all(scalar_multiple(E, n // p, P) != INFINITY for p in primes)


def torsion_structure(E: WeierstrassModel) -> TorsionStructure:
    """E(Q)_tors as one of Mazur's groups with generator witnesses on E."""
    two_points = points_of_exact_order(E, 2)
    two_part, two_gen = 1, INFINITY
    if two_points:
        two_part, two_gen = 2, _pick(two_points)
        fours = points_of_exact_order(E, 4)
        if fours:
            two_part, two_gen = 4, _pick(fours)
            eights = points_of_exact_order(E, 8)
            if eights:
                two_part, two_gen = 8, _pick(eights)

    odd_part, generator = 1, two_gen
    threes = points_of_exact_order(E, 3)
    if threes:
        nines = points_of_exact_order(E, 9)
        chosen, order = (nines, 9) if nines else (threes, 3)
        odd_part *= order
        generator = add_points(E, generator, _pick(chosen))
    for q in (5, 7):
        found = points_of_exact_order(E, q)
        if found:
            odd_part *= q
            generator = add_points(E, generator, _pick(found))

    cyclic_order = two_part * odd_part
    if len(two_points) == 3:
        structure: Tuple[int, ...] = (2, cyclic_order)
        in_cyclic = scalar_multiple(E, cyclic_order // 2, generator)
        second = _pick({P for P in two_points if P != in_cyclic})
        generators: Tuple[AffinePoint, ...] = (generator, second)
    else:
        structure = (cyclic_order,)
        generators = () if cyclic_order == 1 else (generator,)

    if structure not in MAZUR_GROUPS:
        raise InvariantViolationError("mazur", f"torsion {structure} of {E} is not one of Mazur's groups")
    if generators and not has_exact_order(E, generators[0], cyclic_order):
        raise InvariantViolationError("torsion-witness", f"generator {generators[0]} on {E} has wrong order")
    return TorsionStructure(structure, generators)


def torsion_points(E: WeierstrassModel, torsion: TorsionStructure) -> List[AffinePoint]:
    """Every element of the torsion group, enumerated from the witnesses."""
    if not torsion.generators:
        return [INFINITY]
    multiples = [INFINITY]
    P = torsion.generators[0]
    for _ in range(torsion.structure[-1] - 1):
        multiples.append(add_points(E, multiples[-1], P))
    if len(torsion.generators) == 1:
        return multiples
    Q = torsion.generators[1]
    return multiples + [add_points(E, M, Q) for M in multiples]
