"""Exact rational helpers shared by every module.

All quantities are :class:`fractions.Fraction`; nothing here ever touches
floating point.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]

_RATIONAL = re.compile(r"\A\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*\Z")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"n"`` into a Fraction.

    Decimal notation is rejected on purpose: every value this package
    consumes is a closed-form rational.
    """
    m = _RATIONAL.match(text)
    if m is None:
        raise ValueError(f"not a rational number: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def fmt(q: Rational) -> str:
    """Render in lowest terms as ``p/q`` (or ``n`` when integral)."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def as_fraction(value: Rational | str) -> Fraction:
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")
