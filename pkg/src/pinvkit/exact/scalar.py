"""Gaussian rational scalars: exact complex numbers with Fraction components.

The text grammar for a single entry is "a", "a/b", or a sign-joined complex
form "a/b+c/di" with the imaginary suffix "i".  No floating-point literals
are accepted anywhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ..errors import ParseError

Rat = Fraction

_ZERO = Fraction(0)

_RAT_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Parse "a" or "a/b" exactly; rejects floats and empty strings."""
    s = text.strip()
    if not _RAT_RE.match(s):
        raise ParseError(f"not an exact rational: {text!r}")
    f = Fraction(s)
    return f


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True, slots=True)
class GaussRational:
    """Complex number with exact rational real and imaginary parts."""

    re: Fraction = _ZERO
    im: Fraction = _ZERO

    def __add__(self, other: "GaussRational") -> "GaussRational":
        return GaussRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussRational") -> "GaussRational":
        return GaussRational(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GaussRational":
        return GaussRational(-self.re, -self.im)

    def __mul__(self, other: "GaussRational") -> "GaussRational":
        return GaussRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __truediv__(self, other: "GaussRational") -> "GaussRational":
        d = other.abs_sq()
        if d == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussRational(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def conj(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def abs_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def scale(self, c: Fraction) -> "GaussRational":
        return GaussRational(self.re * c, self.im * c)

    def __str__(self) -> str:
        if self.im == 0:
            return format_rational(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"{format_rational(self.re)}{sign}{format_rational(abs(self.im))}i"


GQ_ZERO = GaussRational()
GQ_ONE = GaussRational(Fraction(1))


def gq(value: int | Fraction | GaussRational) -> GaussRational:
    """Coerce an int or Fraction to a GaussRational (identity on GaussRational)."""
    if isinstance(value, GaussRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussRational(Fraction(value))
    raise TypeError(f"cannot coerce {type(value).__name__} to GaussRational")


def parse_entry(text: str) -> GaussRational:
    """Parse one matrix entry: real rational or sign-joined complex form."""
    s = text.strip()
    if not s:
        raise ParseError("empty matrix entry")
    if not s.endswith("i"):
        return GaussRational(parse_rational(s))
    body = s[:-1]
    if not body:
        raise ParseError(f"bare imaginary unit not accepted: {text!r}")
    # Split at the last sign that is not the leading sign of the real part
    # and not the sign directly after '/' (impossible in the grammar anyway).
    split = -1
    for idx in range(len(body) - 1, 0, -1):
        if body[idx] in "+-":
            split = idx
            break
    if split == -1:
        return GaussRational(_ZERO, parse_rational(body))
    re_part = body[:split]
    im_part = body[split:]
    if im_part in ("+", "-"):
        raise ParseError(f"missing imaginary magnitude: {text!r}")
    return GaussRational(parse_rational(re_part), parse_rational(im_part))


def format_entry(z: GaussRational) -> str:
    return str(z)
