"""Exact canonical rationals: the ground layer for everything else.

A rational is a `fractions.Fraction`, which already maintains the canonical
form we rely on everywhere: positive denominator and numerator/denominator in
lowest terms, with zero stored as 0/1.  Equality of values is therefore
structural equality.  This module adds the constructors, the strict literal
grammar, and exact decimal rendering; none of it ever touches binary floating
point.
"""

import re
from fractions import Fraction as Rational

from .errors import DomainError, ParseError

__all__ = [
    "Rational",
    "make",
    "arith",
    "compare",
    "parse_rational",
    "to_decimal",
]

# `-? digits ('.' digits)?` or `-? digits '/' digits`
_LITERAL = re.compile(r"\A\s*(-?)(\d+)(?:\.(\d+)|/(\d+))?\s*\Z")


def make(num, den=1):
    """Return the canonical rational num/den.

    Only integers (or existing Rationals) are accepted; floats are rejected
    because their values are binary approximations, not the decimal the
    caller wrote.
    """
    if isinstance(num, float) or isinstance(den, float):
        raise DomainError("binary floats are inexact; pass integers or a string literal")
    if den == 0:
        raise DomainError("zero denominator")
    return Rational(num, den)


def arith(a, b, op):
    """Apply one of {add, sub, mul, div} exactly."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise DomainError("division by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def compare(a, b):
    """Three-way comparison: -1, 0 or +1.

    Agrees with cross-multiplication of numerators against (positive)
    denominators, which is how Fraction implements it.
    """
    if a < b:
        return -1
    if a > b:
        return 1
    return 0


def parse_rational(text):
    """Parse `-? digits ('.' digits)?` or `-? digits '/' digits` exactly.

    Decimal literals are scaled by powers of ten; "0.1" is exactly 1/10.
    """
    m = _LITERAL.match(text)
    if m is None:
        raise ParseError(f"invalid rational literal {text!r}", offset=0,
                         expected=("rational literal",))
    sign, whole, frac, den = m.groups()
    if den is not None:
        if int(den) == 0:
            raise DomainError(f"zero denominator in {text!r}")
        value = Rational(int(whole), int(den))
    elif frac is not None:
        value = Rational(int(whole + frac), 10 ** len(frac))
    else:
        value = Rational(int(whole))
    return -value if sign else value


def _round_half_away(x):
    """Round a Rational to the nearest integer, ties away from zero."""
    sign = -1 if x < 0 else 1
    n, d = abs(x).numerator, abs(x).denominator
    q, r = divmod(n, d)
    if 2 * r >= d:
        q += 1
    return sign * q


def to_decimal(a, digits):
    """Render `a` with exactly `digits` fractional digits.

    Rounding is half-away-from-zero, so |printed value - a| <= 10^-digits / 2.
    A result that rounds to zero is printed without a sign.
    """
    if digits < 0:
        raise ValueError("digits must be >= 0")
    a = Rational(a)
    units = _round_half_away(a * 10 ** digits)
    sign = "-" if units < 0 else ""
    units = abs(units)
    if digits == 0:
        return f"{sign}{units}"
    whole, frac = divmod(units, 10 ** digits)
    return f"{sign}{whole}.{frac:0{digits}d}"
