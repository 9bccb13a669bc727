from enum import Enum


class KernelSource(str, Enum):
    TWO_TORSION = "two_torsion"
    DIVISION_POLYNOMIAL = "division_polynomial"
    SPORADIC_TABLE = "sporadic_table"


class ShapeFamily(str, Enum):
    LINEAR = "L"
    RECTANGULAR = "R"
    TWO_PRIMARY = "T"
    SPECIAL = "S"


class FixtureSource(str, Enum):
    REFERENCE_TABLE = "reference-table"
    REFERENCE_CM_TABLE = "reference-cm-table"
    LMFDB_LOOKUP = "lmfdb-lookup"
    DERIVED = "derived"


class EntryStatus(str, Enum):
    PASS = "pass"
    MISMATCH = "mismatch"
    ERROR = "error"
