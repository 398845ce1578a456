"""Exact rational coefficients.

All coefficients are :class:`gmpy2.mpq` values: arbitrary precision, always
reduced, denominator positive.
"""

from __future__ import annotations

import fractions
import numbers
from math import factorial

from gmpy2 import mpq

__all__ = ["mpq", "Q", "ZERO", "ONE", "format_rational", "parse_rational", "factorial"]

ZERO = mpq(0)
ONE = mpq(1)


def Q(value) -> mpq:
    """Coerce ints, Fractions, mpq and ``"p/q"`` strings to an exact rational.

    Floats are rejected: nothing in this package is allowed to round.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, type(ZERO)):
        return value
    if isinstance(value, numbers.Integral):
        return mpq(int(value))
    if isinstance(value, fractions.Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        raise TypeError("floating point coefficients are not allowed")
    if isinstance(value, numbers.Rational):
        return mpq(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot interpret {value!r} as a rational number")


def parse_rational(text: str) -> mpq:
    """Parse ``"p"`` or ``"p/q"`` with integer ``p`` and positive integer ``q``."""
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"malformed rational {text!r}") from None
    if sep and (den.strip().startswith(("-", "+"))):
        raise ValueError(f"malformed rational {text!r}: denominator must be unsigned")
    if q == 0:
        raise ValueError(f"malformed rational {text!r}: zero denominator")
    return mpq(p, q)


def format_rational(c) -> str:
    c = Q(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


