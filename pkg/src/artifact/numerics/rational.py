"""Exact rational helpers on top of :class:`fractions.Fraction`."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from numbers import Rational as _RationalABC

Rational = Fraction


def to_rational(x) -> Fraction:
    """Convert ``x`` to an exact Fraction.

    Accepts ints, Fractions, binary64 floats (converted exactly, not via
    their decimal repr) and strings in ``"p/q"`` or decimal syntax.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def is_exact(x) -> bool:
    """True for ints and Fractions (not floats)."""
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative argument")
    rn, rd = isqrt(q.numerator), isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def sqrt_upper(q: Fraction, bits: int = 40) -> Fraction:
    """Smallest dyadic ``r = j / 2**bits`` with ``r*r >= q``."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative argument")
    scale = 1 << (2 * bits)
    num = q.numerator * scale
    j = isqrt(num // q.denominator)
    while Fraction(j * j, 1 << (2 * bits)) < q:
        j += 1
    return Fraction(j, 1 << bits)


def round_to_dyadic(x: float, bits: int = 53) -> Fraction:
    """Round a float to the nearest multiple of ``2**-bits``."""
    return Fraction(round(x * (1 << bits)), 1 << bits)


def sign(x) -> int:
    return (x > 0) - (x < 0)
