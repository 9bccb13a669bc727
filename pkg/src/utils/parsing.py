import re
from fractions import Fraction
from typing import List, Sequence, Union

from src.curves.weier import WeierstrassModel
from src.utils.exceptions import CurveParseError

_LIST = re.compile(r"^\s*\[(.*)\]\s*$")
_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(text: Union[int, str], source: str = "") -> Fraction:
    token = str(text).strip()
    if not _RATIONAL.match(token):
        raise CurveParseError(source or token, f"{token!r} is not an integer or p/q rational")
    try:
        return Fraction(token)
    except ZeroDivisionError:
        raise CurveParseError(source or token, f"{token!r} has a zero denominator") from None


def parse_coefficients(text: str) -> List[Fraction]:
    match = _LIST.match(text)
    if not match:
        raise CurveParseError(text, "expected a bracketed list such as [a1,a2,a3,a4,a6]")
    body = match.group(1).strip()
    if not body:
        raise CurveParseError(text, "empty coefficient list")
    return [parse_rational(part, text) for part in body.split(",")]


def curve_from_coefficients(coefficients: Sequence, short: bool = False, source: str = "") -> WeierstrassModel:
    """[a1,a2,a3,a4,a6] or, for two entries, the short model y^2 = x^3 + Ax + B."""
    values = [c if isinstance(c, Fraction) else parse_rational(c, source) for c in coefficients]
    if short and len(values) != 2:
        raise CurveParseError(source or str(values), "a short model takes exactly two coefficients [A,B]")
    if len(values) == 2:
        return WeierstrassModel.from_short(*values)
    if len(values) != 5:
        raise CurveParseError(source or str(values), f"expected 5 a-invariants, got {len(values)}")
    return WeierstrassModel(*values)


def parse_curve_input(text: str, short: bool = False) -> WeierstrassModel:
    return curve_from_coefficients(parse_coefficients(text), short, text)
