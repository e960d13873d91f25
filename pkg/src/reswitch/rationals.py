"""Exact rational parsing and decimal rendering.

All quantities in this package are `fractions.Fraction` values; binary floats
never enter any computation. Rendering to fixed decimals happens only at the
output boundary, with half-away-from-zero rounding.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ModelFormatError


def parse_rational(text: str) -> Fraction:
    """Parse "p/q", integer, or decimal strings ("1.25") exactly."""
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ModelFormatError(f"not a rational number: {text!r}") from exc


def round_half_away(value: Fraction, places: int = 0) -> Fraction:
    """Round to `places` decimals, ties away from zero (35.4375 -> 35.44)."""
    scale = Fraction(10) ** places
    scaled = abs(value) * scale
    whole, rem = divmod(scaled.numerator, scaled.denominator)
    if 2 * rem >= scaled.denominator:
        whole += 1
    result = Fraction(whole, 1) / scale
    return -result if value < 0 else result


def format_fixed(value: Fraction, places: int) -> str:
    """Fixed-point decimal string with exactly `places` digits."""
    rounded = round_half_away(value, places)
    sign = "-" if rounded < 0 else ""
    units = abs(rounded) * Fraction(10) ** places
    digits = str(units.numerator)  # denominator is 1 after rounding
    if places == 0:
        return sign + digits
    digits = digits.rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}"
