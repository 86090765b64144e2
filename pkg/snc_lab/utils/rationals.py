"""Exact rational parsing and rendering.

Reports never show floating-point renderings: a rational prints as ``"p"``
when integral and ``"p/q"`` otherwise.
"""

from fractions import Fraction


def format_rational(value: Fraction | int) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str | int) -> Fraction:
    """Parse ``"7"``, ``"1/3"`` or an int into a Fraction.

    Floats are refused, as are decimal strings, so that a document always
    states the exact value it means.

    Raises:
        ValueError: the input is not an integer or ``p/q`` string.
    """
    if isinstance(text, bool) or isinstance(text, float):
        raise ValueError(f"expected an integer or a 'p/q' string, got {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"expected an integer or a 'p/q' string, got {text!r}")
    stripped = text.strip()
    numerator, sep, denominator = stripped.partition("/")
    try:
        if sep:
            return Fraction(int(numerator), int(denominator))
        return Fraction(int(numerator))
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"'{text}' is not a rational of the form 'p' or 'p/q'") from e
