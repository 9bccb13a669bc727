"""Bundled table of the finitely many j-invariants with an isogeny of sporadic prime degree.

Every record stores a short model with the recorded j and the kernel polynomial
of its sporadic isogeny. Kernels are certified when the table loads, and a curve
with a tabulated j gets the kernel moved onto its own model by the twisting
isomorphism before Velu's formulas are applied.
"""
from __future__ import annotations

import hashlib
import json
import threading
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional

from pydantic import TypeAdapter, ValidationError

from src.algebra.qpoly import RationalPolynomial
from src.config import settings
from src.curves.isogeny import (
    SPORADIC_PRIMES,
    IsogenySource,
    KernelDescriptor,
    PrimeIsogeny,
    validate_kernel,
    velu_codomain,
)
from src.curves.weier import WeierstrassModel, cm_lookup, short_model
from src.models.enums import KernelSource
from src.schemas import SporadicRecordEntry
from src.utils.exceptions import InvariantViolationError, SporadicDataError
from src.utils.logger import logger


@dataclass(frozen=True)
class SporadicIsogenyRecord:
    ell: int
    j: Fraction
    model: WeierstrassModel
    partner_j: Fraction
    kernel_polynomial: RationalPolynomial
    disc_K: Optional[int] = None

    @property
    def is_cm(self) -> bool:
        return self.disc_K is not None


def build_record(entry: SporadicRecordEntry, path: str) -> SporadicIsogenyRecord:
    j = entry.j.to_fraction()
    partner_j = entry.partner_j.to_fraction()
    if entry.ell not in SPORADIC_PRIMES:
        raise SporadicDataError(path, f"{entry.ell} is not a sporadic isogeny prime")
    model = WeierstrassModel.from_short(entry.model.A.to_fraction(), entry.model.B.to_fraction())
    if model.j_invariant != j:
        raise SporadicDataError(path, f"model j={model.j_invariant} differs from recorded j={j}")

    kernel = RationalPolynomial(entry.kernel_coeffs).monic()
    if not validate_kernel(model, kernel, entry.ell):
        raise SporadicDataError(path, f"kernel polynomial for ell={entry.ell}, j={j} fails validation")
    image = velu_codomain(model, KernelDescriptor(entry.ell, kernel, KernelSource.SPORADIC_TABLE), validate=False)
    if image.j_invariant != partner_j:
        raise SporadicDataError(path, f"kernel for ell={entry.ell}, j={j} lands on j={image.j_invariant}, not {partner_j}")

    disc_K = None
    if partner_j == j:
        cm = cm_lookup(j)
        if cm is None or cm.disc_K != -entry.ell or (entry.disc_K is not None and entry.disc_K != cm.disc_K):
            raise SporadicDataError(path, f"self-isogenous record ell={entry.ell}, j={j} is not a CM j-invariant")
        disc_K = cm.disc_K
    elif entry.disc_K is not None:
        raise SporadicDataError(path, f"record ell={entry.ell}, j={j} has a CM discriminant but changes j")
    return SporadicIsogenyRecord(entry.ell, j, model, partner_j, kernel, disc_K)


def _check_pinned_hash(path: Path, raw: bytes):
    pin = path.with_suffix(".sha256")
    if not pin.exists():
        logger.warning(f"No sha256 pin next to {path}; loading sporadic data unchecked")
        return
    expected = pin.read_text().split()[0].strip()
    actual = hashlib.sha256(raw).hexdigest()
    if expected != actual:
        raise SporadicDataError(str(path), f"sha256 {actual} does not match pinned {expected}")


class SporadicTable:
    def __init__(self, records: List[SporadicIsogenyRecord]):
        self._by_j: Dict[Fraction, List[SporadicIsogenyRecord]] = {}
        for record in records:
            self._by_j.setdefault(record.j, []).append(record)

    @classmethod
    def load(cls, path: str) -> "SporadicTable":
        file = Path(path)
        try:
            raw = file.read_bytes()
        except OSError as e:
            raise SporadicDataError(path, f"cannot read: {e}") from e
        _check_pinned_hash(file, raw)
        try:
            entries = TypeAdapter(List[SporadicRecordEntry]).validate_python(json.loads(raw))
        except (json.JSONDecodeError, ValidationError) as e:
            raise SporadicDataError(path, f"malformed: {e}") from e
        records = [build_record(entry, path) for entry in entries]
        logger.info(f"Loaded {len(records)} sporadic isogeny records from {path}")
        return cls(records)

    def __len__(self) -> int:
        return sum(len(v) for v in self._by_j.values())

    def records_for(self, j: Fraction) -> List[SporadicIsogenyRecord]:
        return list(self._by_j.get(j, ()))

    @property
    def records(self) -> List[SporadicIsogenyRecord]:
        return [r for group in self._by_j.values() for r in group]


_lock = threading.Lock()
_tables: Dict[str, SporadicTable] = {}


def get_sporadic_table(path: Optional[str] = None) -> SporadicTable:
    path = path or settings.sporadic_data
    with _lock:
        table = _tables.get(path)
        if table is None:
            table = SporadicTable.load(path)
            _tables[path] = table
        return table


def transport_kernel(f: RationalPolynomial, mu: Fraction) -> RationalPolynomial:
    """Image of a kernel polynomial under x -> mu * x, kept monic."""
    return f.scale_variable(1 / mu) * (mu ** f.degree)


def sporadic_isogenies(E: WeierstrassModel, table: Optional[SporadicTable] = None) -> List[PrimeIsogeny]:
    table = table or get_sporadic_table()
    short, _ = short_model(E)
    A, B = short.a4, short.a6
    out: List[PrimeIsogeny] = []
    for record in table.records_for(E.j_invariant):
        # tabulated j avoid 0 and 1728, so A, B, A0, B0 are all nonzero
        A0, B0 = record.model.a4, record.model.a6
        mu = (B * A0) / (A * B0)
        kernel = KernelDescriptor(record.ell, transport_kernel(record.kernel_polynomial, mu), KernelSource.SPORADIC_TABLE)
        codomain = velu_codomain(E, kernel, validate=False)
        if codomain.j_invariant != record.partner_j:
            raise InvariantViolationError(
                "sporadic-transport", f"ell={record.ell} image of {E} has j={codomain.j_invariant}, expected {record.partner_j}"
            )
        out.append(PrimeIsogeny(E, kernel, codomain))
    return out


class SporadicSource(IsogenySource):
    degrees = SPORADIC_PRIMES

    def isogenies(self, E: WeierstrassModel, ell: int) -> List[PrimeIsogeny]:
        return [phi for phi in sporadic_isogenies(E) if phi.degree == ell]
