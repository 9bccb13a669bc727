from __future__ import annotations

import json
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from pydantic import ValidationError

from src.config import settings
from src.core.class_builder import ClassGraph, IsogenyCounts, build_class, check_class_invariants
from src.core.shapes import (
    CMTableRow,
    Configuration,
    GraphShape,
    TableRow,
    check_shape_invariants,
    classify_shape,
    match_cm_row,
    match_table_row,
    torsion_configuration,
)
from src.curves.weier import WeierstrassModel
from src.models.enums import EntryStatus
from src.schemas import (
    CMReport,
    CountsReport,
    EdgeReport,
    EntryResult,
    FixtureEntry,
    GraphReport,
    RationalValue,
    VerifySummary,
    VertexReport,
)
from src.utils.exceptions import AtlasError, FixtureError
from src.utils.logger import logger
from src.utils.parsing import curve_from_coefficients


@dataclass
class Classification:
    curve: WeierstrassModel
    graph: ClassGraph
    shape: GraphShape
    config: Configuration
    slots: List[int]
    counts: List[IsogenyCounts]
    row: TableRow
    cm_row: Optional[CMTableRow] = None

    def to_report(self) -> GraphReport:
        g = self.graph
        cm = None
        if g.cm is not None:
            cm = CMReport(j=RationalValue.from_fraction(g.cm.j), dK=g.cm.disc_K)
        return GraphReport(
            input={"a": [str(a) for a in self.curve.a_invariants]},
            vertices=[
                VertexReport(
                    a=[str(a) for a in v.model.a_invariants],
                    j=RationalValue.from_fraction(v.model.j_invariant),
                    torsion=v.torsion.label,
                )
                for v in g.vertices
            ],
            edges=[EdgeReport(u=u, v=v, ell=ell) for u, v, ell in g.edges],
            shape=self.shape.tag,
            config=list(self.config),
            counts=[CountsReport(C=c.C, C_p=c.C_p, max_cyclic_degree=c.max_cyclic_degree) for c in self.counts],
            cm=cm,
            table_row=self.cm_row.identifier if self.cm_row else self.row.identifier,
        )


def classify_curve(E: WeierstrassModel) -> Classification:
    g = build_class(E)
    counts = check_class_invariants(g)
    shape = classify_shape(g)
    config, slots = torsion_configuration(g, shape)
    row = match_table_row(shape, config)
    check_shape_invariants(g, shape, slots)
    cm_row = match_cm_row(g, shape, config)
    logger.info(f"{E}: {shape.tag} {' '.join(config)} ({row.identifier})")
    return Classification(E, g, shape, config, slots, counts, row, cm_row)


def load_fixtures(path: str) -> List[FixtureEntry]:
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as e:
        raise FixtureError(path, f"cannot read: {e}") from e
    entries = []
    for number, line in enumerate(lines, start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        try:
            entries.append(FixtureEntry.model_validate(json.loads(line)))
        except (json.JSONDecodeError, ValidationError) as e:
            raise FixtureError(path, f"line {number}: {e}") from e
    return entries


class ClassManager:
    """Caches finished classifications; distinct classes may be built concurrently."""

    def __init__(self):
        self._lock = threading.Lock()
        self._cache: Dict[Tuple, Classification] = {}

    def classify(self, E: WeierstrassModel) -> Classification:
        key = E.a_invariants
        with self._lock:
            cached = self._cache.get(key)
        if cached is not None:
            return cached
        # Built outside the lock
        result = classify_curve(E)
        with self._lock:
            self._cache.setdefault(key, result)
        return result

    def clear(self):
        with self._lock:
            self._cache.clear()

    def entry_point_signatures(self, E: WeierstrassModel) -> List[Tuple[str, Configuration]]:
        """(shape, configuration) computed from every vertex of E's class."""
        base = self.classify(E)
        return [
            (c.shape.tag, c.config)
            for c in (self.classify(v.model) for v in base.graph.vertices)
        ]

    def verify_entry(self, entry: FixtureEntry, all_vertices: bool = False) -> EntryResult:
        expected = tuple(entry.expected_config)
        result = EntryResult(
            label=entry.label,
            status=EntryStatus.PASS,
            expected_shape=entry.expected_shape,
            expected_config=list(expected),
        )
        try:
            E = curve_from_coefficients(entry.a_invariants, source=entry.label)
            classified = self.classify(E)
            result.shape = classified.shape.tag
            result.config = list(classified.config)
            if (classified.shape.tag, classified.config) != (entry.expected_shape, expected):
                result.status = EntryStatus.MISMATCH
            elif all_vertices:
                signatures = set(self.entry_point_signatures(E))
                if signatures != {(entry.expected_shape, expected)}:
                    result.status = EntryStatus.MISMATCH
                    result.detail = f"rebuilding from other vertices gave {sorted(signatures)}"
        except AtlasError as e:
            logger.error(f"{entry.label}: {e}")
            result.status = EntryStatus.ERROR
            result.detail = str(e)
        return result

    def verify_tables(self, path: Optional[str] = None, workers: Optional[int] = None, all_vertices: bool = False) -> VerifySummary:
        path = path or settings.fixture_path
        entries = load_fixtures(path)
        workers = workers or settings.verify_workers
        logger.info(f"Verifying {len(entries)} fixture entries from {path} with {workers} workers")
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda e: self.verify_entry(e, all_vertices), entries))
        results.sort(key=lambda r: r.label)
        passed = sum(1 for r in results if r.status == EntryStatus.PASS)
        summary = VerifySummary(total=len(results), passed=passed, failed=len(results) - passed, results=results)
        logger.info(f"Verification: {summary.passed}/{summary.total} passed")
        return summary
