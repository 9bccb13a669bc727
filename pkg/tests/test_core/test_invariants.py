from itertools import product
from math import isqrt

import pytest
from sympy import primerange

from src.config import settings
from src.core.class_builder import build_class
from src.core.class_manager import classify_curve, load_fixtures
from src.core.shapes import TABLE_ROWS, classify_shape
from src.curves.isogeny import all_prime_isogenies
from src.curves.torsion import torsion_structure
from src.curves.weier import (
    INFINITY,
    AffinePoint,
    WeierstrassModel,
    count_points_mod_p,
    good_primes,
    is_isomorphic,
    scalar_multiple,
    twist,
)
from src.utils.parsing import curve_from_coefficients

SMALL_SHORT_MODELS = [
    (A, B)
    for A, B in product(range(-2, 3), repeat=2)
    if 4 * A ** 3 + 27 * B ** 2 != 0
]
WIDE_SHORT_MODELS = [
    (A, B)
    for A, B in product(range(-50, 51, 5), repeat=2)
    if 4 * A ** 3 + 27 * B ** 2 != 0
]
KNOWN_TYPES = {(row.shape, row.config) for row in TABLE_ROWS}


def _check_class_bounds(A, B):
    result = classify_curve(WeierstrassModel.from_short(A, B))
    for counts in result.counts:
        assert counts.C <= 8
        assert counts.C not in (5, 7)
        assert counts.C_p.get(2, 1) in (1, 2, 4, 6, 8)
    assert (result.shape.tag, result.config) in KNOWN_TYPES


@pytest.mark.parametrize("A, B", SMALL_SHORT_MODELS)
def test_small_curves_respect_class_bounds(A, B):
    _check_class_bounds(A, B)


@pytest.mark.slow
@pytest.mark.parametrize("A, B", WIDE_SHORT_MODELS)
def test_wide_sweep_respects_class_bounds(A, B):
    _check_class_bounds(A, B)


def test_wide_sweep_is_large_enough():
    assert len(WIDE_SHORT_MODELS) >= 300


def _has_dual_edges(g):
    for phi in g.isogenies.values():
        back = all_prime_isogenies(phi.codomain, degrees=[phi.degree])
        if not any(is_isomorphic(psi.codomain, phi.domain) for psi in back):
            return False
    return True


@pytest.mark.parametrize(
    "a_invariants",
    [(1, -1, 1, -6, -4), (0, -1, 1, -10, -20), (0, 0, 0, 0, 1), (1, 0, 1, 4, -6)],
)
def test_every_edge_has_a_dual(a_invariants):
    assert _has_dual_edges(build_class(WeierstrassModel(*a_invariants)))


@pytest.mark.slow
@pytest.mark.parametrize("entry", load_fixtures(settings.fixture_path), ids=lambda e: e.label)
def test_every_corpus_edge_has_a_dual(entry):
    g = build_class(curve_from_coefficients(entry.a_invariants, source=entry.label))
    assert _has_dual_edges(g)


@pytest.mark.parametrize(
    "a_invariants",
    [(0, 0, 0, 0, 1), (0, -1, 1, -10, -20), (1, -1, 1, -3, 3), (1, 0, 0, -1070, 7812), (1, 0, 0, -45, 81)],
)
def test_torsion_order_divides_point_counts(a_invariants):
    E = WeierstrassModel(*a_invariants)
    order = torsion_structure(E).order
    primes = list(good_primes(E, primerange(5, 60)))[:3]
    assert len(primes) == 3
    for p in primes:
        assert count_points_mod_p(E, p) % order == 0


def _brute_force_torsion_order(A, B):
    """Count O plus the integral points allowed by Nagell-Lutz that have order at most 12."""
    E = WeierstrassModel.from_short(A, B)
    disc = abs(4 * A ** 3 + 27 * B ** 2)
    found = 1
    for x in range(-10, 100):
        value = x ** 3 + A * x + B
        if value < 0:
            continue
        y = isqrt(value)
        if y * y != value or (y and disc % (y * y)):
            continue
        for signed in {y, -y}:
            P = AffinePoint(x, signed)
            if any(scalar_multiple(E, n, P) == INFINITY for n in range(1, 13)):
                found += 1
    return found


@pytest.mark.parametrize("A, B", [(A, B) for A, B in product(range(-50, 51, 7), repeat=2) if 4 * A ** 3 + 27 * B ** 2])
def test_torsion_matches_nagell_lutz_search(A, B):
    assert torsion_structure(WeierstrassModel.from_short(A, B)).order == _brute_force_torsion_order(A, B)


@pytest.mark.parametrize("A, B", [(0, 16), (0, 1), (4, 0), (-1, 0), (-43, 166), (-4, 4)])
def test_torsion_matches_nagell_lutz_on_known_torsion(A, B):
    assert torsion_structure(WeierstrassModel.from_short(A, B)).order == _brute_force_torsion_order(A, B)


@pytest.mark.parametrize(
    "a_invariants",
    [(0, -1, 1, -10, -20), (1, -1, 1, -6, -4), (0, 0, 1, -1, 0), (1, 0, 1, 4, -6)],
)
@pytest.mark.parametrize("d", [-1, 2, -3, 5])
def test_isogeny_graph_is_twist_invariant(a_invariants, d):
    E = WeierstrassModel(*a_invariants)
    g, h = build_class(E), build_class(twist(E, d))
    assert len(g) == len(h)
    assert sorted(ell for _, _, ell in g.edges) == sorted(ell for _, _, ell in h.edges)
    assert classify_shape(g).tag == classify_shape(h).tag
    for vertex in g.vertices:
        assert any(is_isomorphic(twist(vertex.model, d), other.model) for other in h.vertices)
