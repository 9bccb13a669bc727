from fractions import Fraction

import pytest

from src.algebra.qpoly import RationalPolynomial
from src.curves.isogeny import (
    KernelDescriptor,
    all_prime_isogenies,
    isogenies_of_degree,
    odd_kernel_polynomials,
    two_isogeny_kernels,
    validate_kernel,
    velu_codomain,
)
from src.curves.weier import WeierstrassModel, is_isomorphic
from src.models.enums import KernelSource
from src.utils.exceptions import UnsupportedInputError

X = RationalPolynomial.x()


def test_two_isogenies_of_full_two_torsion():
    E = WeierstrassModel.from_short(-1, 0)
    kernels = two_isogeny_kernels(E)
    assert [k.kernel_polynomial for k in kernels] == [X + 1, X, X - 1]
    assert all(k.source == KernelSource.TWO_TORSION for k in kernels)
    assert velu_codomain(E, kernels[1]) == WeierstrassModel.from_short(4, 0)


def test_three_isogeny_from_kernel_x():
    E = WeierstrassModel.from_short(0, 1)
    kernel = KernelDescriptor(3, X)
    assert validate_kernel(E, X, 3)
    assert velu_codomain(E, kernel).j_invariant == 0


def test_non_kernel_is_rejected():
    E = WeierstrassModel.from_short(0, 1)
    assert not validate_kernel(E, X - 1, 3)
    with pytest.raises(UnsupportedInputError):
        velu_codomain(E, KernelDescriptor(3, X - 1))


def test_odd_kernels_of_27a3():
    E = WeierstrassModel.from_short(0, 16)
    kernels = odd_kernel_polynomials(E, 3)
    assert sorted(str(k.kernel_polynomial) for k in kernels) == ["x", "x + 4"]


def test_kernel_descriptor_shape():
    with pytest.raises(UnsupportedInputError):
        KernelDescriptor(4, X)
    with pytest.raises(UnsupportedInputError):
        KernelDescriptor(5, X)
    with pytest.raises(UnsupportedInputError):
        KernelDescriptor(11, X ** 5 * 2)
    assert KernelDescriptor(11, X ** 5).kernel_polynomial.degree == 5


def test_eleven_kernel_certified_without_division_polynomial():
    E = WeierstrassModel.from_short(-9504, 365904)
    f = RationalPolynomial([1294672896, -92835072, 1463616, 7920, -264, 1])
    assert validate_kernel(E, f, 11)
    assert velu_codomain(E, KernelDescriptor(11, f)).j_invariant == -32768
    assert not validate_kernel(E, f + 1, 11)


def test_kernel_factor_of_psi5_for_11a3():
    E = WeierstrassModel(0, -1, 1, 0, 0)
    kernels = odd_kernel_polynomials(E, 5)
    assert len(kernels) == 1
    (f,) = [k.kernel_polynomial for k in kernels]
    assert f.degree == 2
    assert validate_kernel(E, f, 5)
    assert not validate_kernel(E, f + X, 5)


def test_codomains_are_isogenous_not_isomorphic():
    E = WeierstrassModel(0, -1, 1, -10, -20)
    found = all_prime_isogenies(E)
    assert [phi.degree for phi in found] == [5, 5]
    for phi in found:
        assert phi.domain == E
        assert not is_isomorphic(E, phi.codomain)


def test_curve_without_isogenies():
    assert all_prime_isogenies(WeierstrassModel(0, 0, 1, -1, 0)) == []


def test_unknown_degree():
    with pytest.raises(UnsupportedInputError):
        isogenies_of_degree(WeierstrassModel.from_short(0, 1), 23)


def test_degree_filter():
    E = WeierstrassModel.from_short(-1, 0)
    assert [phi.degree for phi in all_prime_isogenies(E, degrees=[2])] == [2, 2, 2]
    assert isogenies_of_degree(E, 3) == []
