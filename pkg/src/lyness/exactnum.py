"""Rational scalars and exact square roots.

Every scalar in the package is a :class:`fractions.Fraction`, which already
keeps ``gcd(num, den) == 1`` and ``den > 0``.  This module adds the pieces
the standard library lacks: a typed zero-denominator error, an exact
rational square root, and the ``"n/d"`` wire format.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]


class DivisionByZero(ZeroDivisionError):
    """Raised when a rational is built with a zero denominator."""


def normalize(n: int, d: int) -> Fraction:
    if d == 0:
        raise DivisionByZero(f"zero denominator in {n}/{d}")
    return Fraction(n, d)


def as_rational(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def is_square_int(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def sqrt_exact(q: RationalLike) -> Fraction | None:
    """Return the nonnegative rational square root of `q`, or None.

    Numerator and denominator are already coprime, so `q` is a rational
    square exactly when both are integer squares.
    """
    q = as_rational(q)
    if q < 0:
        return None
    rn = isqrt(q.numerator)
    rd = isqrt(q.denominator)
    if rn * rn != q.numerator or rd * rd != q.denominator:
        return None
    return Fraction(rn, rd)


def is_square(q: RationalLike) -> bool:
    return sqrt_exact(q) is not None


def parse_rational(text: str) -> Fraction:
    """Parse ``"n/d"`` or ``"n"``.  Decimal and exponent forms are rejected."""
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not an exact rational: {text!r}") from None
    return normalize(n, d)


def format_rational(q: RationalLike) -> str:
    q = as_rational(q)
    return f"{q.numerator}/{q.denominator}"


def max_bits(*values: Fraction) -> int:
    return max(max(v.numerator.bit_length(), v.denominator.bit_length()) for v in values)
