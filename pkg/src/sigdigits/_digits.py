"""Exact leading-digit extraction.

Values are reduced to an exact rational (or an exact decimal for base 10)
before any digit is read, so boundary values such as 0.3 or 2e-5 never fall
on the wrong side of a block edge because of binary rounding.
"""

import math
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from numbers import Integral, Real

from .errors import DomainError


def _to_exact(value, base):
    """Return an exact nonnegative Decimal (base 10) or Fraction for ``|value|``."""
    if isinstance(value, str):
        try:
            value = Decimal(value.strip().replace("_", ""))
        except InvalidOperation:
            raise DomainError(f"not a number: {value!r}") from None
    if isinstance(value, Decimal):
        if not value.is_finite():
            raise DomainError(f"non-finite value: {value}")
        value = abs(value)
        return value if base == 10 else Fraction(value)
    if isinstance(value, bool):
        raise DomainError("booleans are not numeric data")
    if isinstance(value, (Integral, Fraction)):
        return Fraction(abs(value))
    if isinstance(value, Real):
        x = float(value)
        if not math.isfinite(x):
            raise DomainError(f"non-finite value: {x}")
        x = abs(x)
        # shortest round-trip repr is the decimal the user actually wrote
        return Decimal(repr(x)) if base == 10 else Fraction(x)
    raise DomainError(f"unsupported value type: {type(value).__name__}")


def _lead_decimal(value, width):
    sign, digits, _ = value.as_tuple()
    digits = list(digits)
    while digits and digits[0] == 0:
        digits.pop(0)
    digits = (digits + [0] * width)[:width]
    return int("".join(map(str, digits)))


def _lead_fraction(q, base, width):
    # exponent estimate from floats, then exact correction
    try:
        e = math.floor(math.log(q.numerator, base) - math.log(q.denominator, base))
    except (ValueError, OverflowError):
        e = 0
    while Fraction(base) ** e > q:
        e -= 1
    while Fraction(base) ** (e + 1) <= q:
        e += 1
    return math.floor(q / Fraction(base) ** (e - width + 1))


def leading_block(value, base, width):
    """Integer formed by the first ``width`` significant base-``base`` digits of ``|value|``."""
    if base < 2:
        raise DomainError(f"base must be >= 2, got {base}")
    if width < 1:
        raise DomainError(f"width must be >= 1, got {width}")
    exact = _to_exact(value, base)
    if exact == 0:
        raise DomainError("zero has no significant digits")
    if isinstance(exact, Decimal):
        return _lead_decimal(exact, width)
    return _lead_fraction(exact, base, width)
