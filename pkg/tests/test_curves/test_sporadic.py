import json
from fractions import Fraction
from unittest.mock import patch

import pytest
from sympy import primerange

from src.algebra.qpoly import RationalPolynomial
from src.curves.isogeny import validate_kernel
from src.curves.sporadic import SporadicTable, get_sporadic_table, sporadic_isogenies, transport_kernel
from src.curves.weier import WeierstrassModel, frobenius_trace, is_good_prime, is_isomorphic, short_model, twist
from src.models.enums import KernelSource
from src.utils.exceptions import SporadicDataError

KERNEL_121B1 = [1294672896, -92835072, 1463616, 7920, -264, 1]


def _same_traces(E1, E2, bound=200):
    primes = [p for p in primerange(5, bound) if is_good_prime(E1, p) and is_good_prime(E2, p)]
    return bool(primes) and all(frobenius_trace(E1, p) == frobenius_trace(E2, p) for p in primes)


@pytest.fixture(scope="module")
def table():
    return get_sporadic_table()


def test_bundled_table_loads(table):
    # one record per j; the CM records map j to itself
    assert len(table) == 11
    assert {r.ell for r in table.records} == {11, 17, 19, 37, 43, 67, 163}
    assert sum(r.is_cm for r in table.records) == 5


def test_every_record_carries_a_kernel(table):
    for record in table.records:
        f = record.kernel_polynomial
        assert f.leading_coefficient == 1
        assert f.degree == (record.ell - 1) // 2


def test_cm_record(table):
    (record,) = table.records_for(Fraction(-32768))
    assert record.is_cm
    assert record.disc_K == -11
    assert record.partner_j == record.j
    assert record.kernel_polynomial == RationalPolynomial(KERNEL_121B1)


def test_pairs_are_stored_both_ways(table):
    (forward,) = table.records_for(Fraction(-9317))
    (backward,) = table.records_for(Fraction(-162677523113838677))
    assert forward.ell == backward.ell == 37
    assert forward.partner_j == backward.j
    assert backward.partner_j == forward.j


def test_cm_eleven_isogeny_of_121b():
    E = WeierstrassModel(0, -1, 1, -7, 10)
    (phi,) = sporadic_isogenies(E)
    assert phi.degree == 11
    assert phi.kernel.source == KernelSource.SPORADIC_TABLE
    assert phi.kernel.kernel_polynomial.degree == 5
    assert phi.codomain.j_invariant == Fraction(-32768)
    assert not is_isomorphic(E, phi.codomain)
    assert _same_traces(E, phi.codomain)


def test_non_cm_eleven_isogeny():
    E = WeierstrassModel(1, 1, 1, -30, -76)
    (phi,) = sporadic_isogenies(E)
    assert phi.codomain.j_invariant == -121
    assert _same_traces(E, phi.codomain)
    assert validate_kernel(E, phi.kernel.kernel_polynomial, 11)


def test_transport_to_a_twist():
    E = twist(WeierstrassModel(1, 1, 1, -8, 6), -3)
    (phi,) = sporadic_isogenies(E)
    assert phi.degree == 37
    assert phi.codomain.j_invariant == Fraction(-162677523113838677)
    assert _same_traces(E, phi.codomain)


def test_transported_kernel_is_a_kernel_on_the_twist():
    base = WeierstrassModel.from_short(-9504, 365904)
    kernel = RationalPolynomial(KERNEL_121B1)
    twisted = twist(base, 5)
    short, _ = short_model(twisted)
    mu = (short.a6 * base.a4) / (short.a4 * base.a6)
    moved = transport_kernel(kernel, mu)
    assert moved.leading_coefficient == 1
    assert validate_kernel(twisted, moved, 11)
    assert not validate_kernel(twisted, kernel, 11)


def test_other_j_has_no_sporadic_isogenies():
    assert sporadic_isogenies(WeierstrassModel(0, 0, 1, -1, 0)) == []


def _write(path, entries):
    path.write_text(json.dumps(entries))
    return str(path)


def _entry(**overrides):
    entry = {
        "ell": 11,
        "j": {"num": -32768},
        "partner_j": {"num": -32768},
        "model": {"A": {"num": -9504}, "B": {"num": 365904}},
        "kernel_coeffs": list(KERNEL_121B1),
    }
    entry.update(overrides)
    return entry


def test_loads_a_single_valid_entry(tmp_path):
    loaded = SporadicTable.load(_write(tmp_path / "one.json", [_entry()]))
    (record,) = loaded.records
    assert record.disc_K == -11


def test_rejects_non_sporadic_prime(tmp_path):
    path = _write(tmp_path / "bad.json", [_entry(ell=23)])
    with pytest.raises(SporadicDataError):
        SporadicTable.load(path)


def test_rejects_wrong_cm_discriminant(tmp_path):
    path = _write(tmp_path / "bad.json", [_entry(disc_K=-19)])
    with pytest.raises(SporadicDataError):
        SporadicTable.load(path)


def test_rejects_corrupted_kernel(tmp_path):
    coeffs = list(KERNEL_121B1)
    coeffs[0] += 1
    path = _write(tmp_path / "bad.json", [_entry(kernel_coeffs=coeffs)])
    with pytest.raises(SporadicDataError):
        SporadicTable.load(path)


def test_rejects_model_with_other_j(tmp_path):
    path = _write(tmp_path / "bad.json", [_entry(model={"A": {"num": -1}, "B": {"num": 0}})])
    with pytest.raises(SporadicDataError):
        SporadicTable.load(path)


def test_rejects_entry_without_kernel(tmp_path):
    entry = _entry()
    del entry["kernel_coeffs"]
    with pytest.raises(SporadicDataError):
        SporadicTable.load(_write(tmp_path / "bad.json", [entry]))


def test_missing_pin_is_logged(tmp_path):
    path = _write(tmp_path / "table.json", [])
    with patch("src.curves.sporadic.logger") as mock_logger:
        SporadicTable.load(path)
    mock_logger.warning.assert_called_once()


def test_rejects_malformed_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(SporadicDataError):
        SporadicTable.load(str(path))


def test_rejects_hash_mismatch(tmp_path):
    path = _write(tmp_path / "table.json", [])
    (tmp_path / "table.sha256").write_text("0" * 64 + "  table.json\n")
    with pytest.raises(SporadicDataError):
        SporadicTable.load(path)


def test_missing_file(tmp_path):
    with pytest.raises(SporadicDataError):
        SporadicTable.load(str(tmp_path / "absent.json"))
