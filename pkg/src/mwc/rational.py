"""Exact ratio values: nonnegative rationals with an infinity sentinel.

All boundary/size quotients in this package are `fractions.Fraction`
instances (always in lowest terms) except for the single sentinel
``INFINITY`` (``math.inf``), which stands both for unreachable BFS
distances and for the expansion constant of a single-vertex graph,
where no admissible cut set exists.  ``math.inf`` compares above every
Fraction, so min/max selections over mixed values stay total.
"""

from __future__ import annotations

import math
from fractions import Fraction

INFINITY = math.inf

Ratio = Fraction | float


def is_infinite(value: Ratio) -> bool:
    return value == INFINITY


def format_ratio(value: Ratio) -> str:
    """Render a ratio as a lossless string: "p/q" or "inf"."""
    if is_infinite(value):
        return "inf"
    frac = Fraction(value)
    return f"{frac.numerator}/{frac.denominator}"


def parse_ratio(text: str) -> Ratio:
    """Inverse of :func:`format_ratio`; also accepts plain integers."""
    text = text.strip()
    if text == "inf":
        return INFINITY
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def ratio_decimal(value: Ratio) -> float | None:
    """Convenience float for reports; None for the infinity sentinel."""
    if is_infinite(value):
        return None
    return float(value)
