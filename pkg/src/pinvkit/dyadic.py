"""Directed rational approximations with power-of-two error control.

Everything here is exact integer arithmetic on numerators and denominators;
no floats are ever produced or consumed.  The directed square roots are the
only place irrational values enter the package, and they always come back as
rationals with a one-sided or two-sided 2^-bits guarantee.
"""

from __future__ import annotations

import math
from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def pow2(k: int) -> Fraction:
    """2**k as a Fraction, for any integer k."""
    if k >= 0:
        return Fraction(1 << k)
    return Fraction(1, 1 << (-k))


def ceil_log2(q: Fraction) -> int:
    """Smallest integer t with 2**t >= q.  Requires q > 0."""
    if q <= 0:
        raise ValueError("ceil_log2 requires a positive argument")
    # First guess from bit lengths, then correct by exact comparison.
    t = q.numerator.bit_length() - q.denominator.bit_length()
    while pow2(t - 1) >= q:
        t -= 1
    while pow2(t) < q:
        t += 1
    return t


def floor_log2(q: Fraction) -> int:
    """Largest integer t with 2**t <= q.  Requires q > 0."""
    t = ceil_log2(q)
    return t if pow2(t) == q else t - 1


def bit_size(q: Fraction) -> int:
    return q.numerator.bit_length() + q.denominator.bit_length()


def sqrt_lower(q: Fraction, bits: int) -> Fraction:
    """Rational r with r <= sqrt(q) and sqrt(q) - r <= 2**-bits.  Requires q >= 0."""
    if q < 0:
        raise ValueError("negative radicand")
    if q == 0:
        return ZERO
    s = 1 << (bits + 1)
    # floor(sqrt(floor(q*s^2))) / s: both floors round down, combined loss < 2/s.
    scaled = (q.numerator * s * s) // q.denominator
    return Fraction(math.isqrt(scaled), s)


def sqrt_upper(q: Fraction, bits: int) -> Fraction:
    """Rational r with r >= sqrt(q) and r - sqrt(q) <= 2**-bits.  Requires q >= 0."""
    if q < 0:
        raise ValueError("negative radicand")
    if q == 0:
        return ZERO
    s = 1 << (bits + 1)
    scaled = (q.numerator * s * s) // q.denominator
    return Fraction(math.isqrt(scaled) + 2, s)


def sqrt_approx(q: Fraction, bits: int) -> Fraction:
    """Rational r with |r - sqrt(q)| <= 2**-bits; exact for perfect squares."""
    exact = sqrt_exact(q)
    if exact is not None:
        return exact
    return sqrt_lower(q, bits)


def sqrt_exact(q: Fraction) -> Fraction | None:
    """sqrt(q) when q is the square of a rational, else None."""
    if q < 0:
        return None
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def sqrt_within(r: Fraction, q: Fraction, delta: Fraction) -> bool:
    """Exact decision of |r - sqrt(q)| <= delta for q >= 0, delta >= 0."""
    if q < 0:
        raise ValueError("negative radicand")
    lo = r - delta
    hi = r + delta
    if hi < 0:
        return False
    if lo > 0 and lo * lo > q:
        return False
    return q <= hi * hi


def round_to_bits(q: Fraction, bits: int) -> Fraction:
    """Nearest multiple of 2**-bits (ties toward +inf); |result - q| <= 2**-(bits+1)."""
    s = 1 << bits
    return Fraction((q.numerator * s * 2 + q.denominator) // (q.denominator * 2), s)


def round_up_sig_bits(q: Fraction, bits: int) -> Fraction:
    """Smallest dyadic with `bits` significant bits that is >= q (q > 0).

    Keeps upper bounds compact without ever shrinking them; the relative
    excess is below 2**-(bits-1).
    """
    if q <= 0:
        if q == 0:
            return ZERO
        raise ValueError("round_up_sig_bits requires a non-negative argument")
    shift = bits - (floor_log2(q) + 1)
    if shift <= 0:
        # Grid spacing 2**-shift >= 1: round the integer part up to the grid.
        step = 1 << (-shift)
        units = -((-q.numerator) // (q.denominator * step))
        return Fraction(units * step)
    s = 1 << shift
    return Fraction(-((-q.numerator * s) // q.denominator), s)


_EXACT_POW_BIT_CAP = 1 << 20
_INTERVAL_BIT_CAP = 1 << 22


def _pow_interval(q: Fraction, e: int, g: int) -> tuple[int, int]:
    """Integer bounds L, H with L/2^g <= q**(2**e) <= H/2^g, for 0 < q < 1."""
    lo = (q.numerator << g) // q.denominator
    hi = -((-q.numerator << g) // q.denominator)
    for _ in range(e):
        lo = (lo * lo) >> g
        hi = (hi * hi + (1 << g) - 1) >> g
    return lo, hi


def pow2k_le(q: Fraction, e: int, t: Fraction) -> bool:
    """Exact decision of q**(2**e) <= t for 0 <= q < 1, t > 0, e >= 0.

    Decided by exact exponentiation when the result stays small, otherwise by
    iterated interval squaring at increasing dyadic precision; an interval
    verdict proves the exact inequality, so the answer is always exact.
    """
    if not 0 <= q < 1:
        raise ValueError("base must lie in [0, 1)")
    if t <= 0:
        raise ValueError("threshold must be positive")
    if q == 0 or t >= 1:
        return True
    if bit_size(q) << e <= _EXACT_POW_BIT_CAP:
        return q ** (1 << e) <= t
    g = max(2 * bit_size(t) + 128, 256)
    while g <= _INTERVAL_BIT_CAP:
        lo, hi = _pow_interval(q, e, g)
        if hi * t.denominator <= t.numerator << g:
            return True
        if lo * t.denominator > t.numerator << g:
            return False
        g *= 2
    # Interval precision exhausted: the value is within 2**-g of t, which for
    # rational q and t forces a representable power; fall back to exact.
    return q ** (1 << e) <= t


def pow2k_ge(q: Fraction, e: int, t: Fraction) -> bool:
    """Exact decision of q**(2**e) >= t for 0 <= q < 1, t > 0, e >= 0."""
    if not 0 <= q < 1:
        raise ValueError("base must lie in [0, 1)")
    if t <= 0:
        raise ValueError("threshold must be positive")
    if q == 0:
        return False
    if bit_size(q) << e <= _EXACT_POW_BIT_CAP:
        return q ** (1 << e) >= t
    g = max(2 * bit_size(t) + 128, 256)
    while g <= _INTERVAL_BIT_CAP:
        lo, hi = _pow_interval(q, e, g)
        if lo * t.denominator >= t.numerator << g:
            return True
        if hi * t.denominator < t.numerator << g:
            return False
        g *= 2
    return q ** (1 << e) >= t
