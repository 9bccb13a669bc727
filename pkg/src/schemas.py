from fractions import Fraction
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, Field, field_validator

from src.models.enums import EntryStatus, FixtureSource, KernelSource

Coefficient = Union[int, str]


class RationalValue(BaseModel):
    num: int = Field(..., description="Numerator")
    den: int = Field(1, description="Positive denominator")

    @field_validator("den")
    @classmethod
    def positive_denominator(cls, value: int) -> int:
        if value <= 0:
            raise ValueError("denominator must be positive")
        return value

    def to_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    @classmethod
    def from_fraction(cls, value) -> "RationalValue":
        value = Fraction(value)
        return cls(num=value.numerator, den=value.denominator)


class ShortModelValue(BaseModel):
    A: RationalValue
    B: RationalValue


class SporadicRecordEntry(BaseModel):
    """One line of the bundled sporadic isogeny table."""

    ell: int
    j: RationalValue
    partner_j: RationalValue
    disc_K: Optional[int] = None
    model: ShortModelValue
    kernel_coeffs: List[int] = Field(..., min_length=2, description="Kernel polynomial, constant term first")
    source: str = ""


class CurveInput(BaseModel):
    curve: str = Field(
        ...,
        description="[a1,a2,a3,a4,a6] with integer or p/q entries, or [A,B] for a short model",
        json_schema_extra={"examples": ["[1,-1,1,-6,-4]", "[0,1]"]},
    )
    short: bool = Field(False, description="Interpret a two-entry input as y^2 = x^3 + Ax + B")

    model_config = {
        "json_schema_extra": {
            "examples": [
                {"curve": "[1,-1,1,-6,-4]", "short": False},
                {"curve": "[0,16]", "short": True},
            ]
        }
    }


class IsogenyQuery(CurveInput):
    ell: Optional[int] = Field(None, description="Restrict to one prime degree")


class VertexReport(BaseModel):
    a: List[str] = Field(..., description="a-invariants as exact rationals")
    j: RationalValue
    torsion: str = Field(..., description="Torsion group label such as [2,4]")


class EdgeReport(BaseModel):
    u: int
    v: int
    ell: int


class CountsReport(BaseModel):
    C: int
    C_p: Dict[int, int]
    max_cyclic_degree: int


class CMReport(BaseModel):
    j: RationalValue
    dK: int


class GraphReport(BaseModel):
    input: Dict[str, List[str]] = Field(..., description="Echo of the parsed curve")
    vertices: List[VertexReport]
    edges: List[EdgeReport]
    shape: str
    config: List[str]
    counts: List[CountsReport]
    cm: Optional[CMReport] = None
    table_row: Optional[str] = None

    model_config = {
        "json_schema_extra": {
            "examples": [
                {
                    "input": {"a": ["1", "-1", "1", "-6", "-4"]},
                    "vertices": [{"a": ["1", "-1", "1", "-6", "-4"], "j": {"num": 20346417, "den": 289}, "torsion": "[2,2]"}],
                    "edges": [{"u": 0, "v": 1, "ell": 2}],
                    "shape": "T4",
                    "config": ["[2,2]", "[4]", "[4]", "[2]"],
                    "counts": [{"C": 4, "C_p": {"2": 4}, "max_cyclic_degree": 2}],
                    "cm": None,
                    "table_row": "T4/17.a-class",
                }
            ]
        }
    }


class PointReport(BaseModel):
    x: str
    y: str


class TorsionReport(BaseModel):
    a: List[str]
    torsion: str
    order: int
    generators: List[PointReport]


class IsogenyReport(BaseModel):
    degree: int
    source: KernelSource
    kernel_polynomial: str = Field(..., description="Monic kernel polynomial in short-model x")
    codomain: List[str]
    codomain_j: RationalValue


class FixtureEntry(BaseModel):
    label: str
    a_invariants: List[Coefficient] = Field(..., min_length=5, max_length=5)
    expected_shape: str
    expected_config: List[str]
    source: FixtureSource
    note: Optional[str] = None


class EntryResult(BaseModel):
    label: str
    status: EntryStatus
    expected_shape: str
    expected_config: List[str]
    shape: Optional[str] = None
    config: Optional[List[str]] = None
    detail: Optional[str] = None


class VerifySummary(BaseModel):
    total: int
    passed: int
    failed: int
    results: List[EntryResult]

    @property
    def ok(self) -> bool:
        return self.failed == 0
