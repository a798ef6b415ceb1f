# ==================== RATIONALS ====================
# File: core/rational.py

from fractions import Fraction
from typing import Union

from core.errors import InputError

RationalLike = Union[Fraction, int, str]


def parse_rational(text: RationalLike) -> Fraction:
    """Parse ``"p/q"`` or an integer string into a reduced Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise InputError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise InputError(f"not a rational: {text!r}")

    body = text.strip()
    numerator, _, denominator = body.partition("/")
    try:
        num = int(numerator)
        den = int(denominator) if denominator else 1
    except ValueError as exc:
        raise InputError(f"not a rational: {text!r}") from exc
    if den == 0:
        raise InputError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(value: Fraction) -> str:
    # str(Fraction) already yields "p/q" in lowest terms, or "p" for integers
    return str(Fraction(value))


def format_decimal(value: Fraction, digits: int) -> str:
    """Lossy decimal rendering for humans, rounded half away from zero."""
    value = Fraction(value)
    scale = 10 ** digits
    scaled = abs(value) * scale
    rounded = int(scaled + Fraction(1, 2))
    sign = "-" if value < 0 and rounded else ""
    whole, frac = divmod(rounded, scale)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"
