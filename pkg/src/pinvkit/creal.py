"""Computable real numbers as precision-query functions.

A CReal wraps a total function k -> Fraction whose value at k is within
2**-k of the represented real.  This binary-modulus query interface is the
normal form used throughout; other classical encodings (sign/numerator/
denominator function triples, sequences with a separate convergence
modulus) are interconvertible with it, and CRealSeq carries the
explicit-modulus form where it is the natural fit.

Constructors are responsible for the 2**-k invariant; each one below
carries a short argument for why it holds.  Queries are memoized behind a
lock, so values are safe to share across threads.

Only the operations needed by the rest of the package are provided: field
operations, absolute value, max/min, square root, effective limits and
witnessed comparison.  Exponentials and logarithms are deliberately
omitted; no target quantity needs them.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Literal

from .dyadic import ceil_log2, pow2, sqrt_lower
from .errors import PreconditionError, WitnessError


class CReal:
    """A real number exposed through rational approximations r_k with |r_k - x| <= 2^-k."""

    __slots__ = ("_fn", "_cache", "_lock", "label")

    def __init__(self, fn: Callable[[int], Fraction], label: str = "") -> None:
        self._fn = fn
        self._cache: dict[int, Fraction] = {}
        self._lock = threading.Lock()
        self.label = label

    def approx(self, k: int) -> Fraction:
        """Rational within 2**-k of the represented value; k >= 0."""
        if k < 0:
            raise ValueError("precision index must be non-negative")
        with self._lock:
            if k in self._cache:
                return self._cache[k]
        value = self._fn(k)
        with self._lock:
            self._cache[k] = value
        return value

    def __repr__(self) -> str:
        return f"CReal({self.label or '...'})"


def from_rational(q: Fraction | int) -> CReal:
    """Constant representation: every query returns q itself (error 0)."""
    q = Fraction(q)
    return CReal(lambda k: q, label=str(q))


def _magnitude_bound(x: CReal) -> Fraction:
    # |x| <= |x_0| + 1 since the query at precision 0 is within 1 of x.
    return abs(x.approx(0)) + 1


def add(x: CReal, y: CReal) -> CReal:
    # Querying both at k+1 gives errors summing to at most 2^-k.
    return CReal(lambda k: x.approx(k + 1) + y.approx(k + 1), label="add")


def sub(x: CReal, y: CReal) -> CReal:
    return CReal(lambda k: x.approx(k + 1) - y.approx(k + 1), label="sub")


def neg(x: CReal) -> CReal:
    return CReal(lambda k: -x.approx(k), label="neg")


def abs_(x: CReal) -> CReal:
    # ||x_k| - |x|| <= |x_k - x|, so the same precision suffices.
    return CReal(lambda k: abs(x.approx(k)), label="abs")


def max_(x: CReal, y: CReal) -> CReal:
    # |max(a,b) - max(c,d)| <= max(|a-c|, |b-d|).
    return CReal(lambda k: max(x.approx(k), y.approx(k)), label="max")


def min_(x: CReal, y: CReal) -> CReal:
    return CReal(lambda k: min(x.approx(k), y.approx(k)), label="min")


def mul(x: CReal, y: CReal) -> CReal:
    # |x_j y_j - x y| <= |x_j||y - y_j| + |y||x - x_j|
    #                 <= (Bx + 1 + By) 2^-j  with Bx >= |x|, By >= |y|,
    # so j = k + ceil_log2(Bx + By + 1) brings the error under 2^-k.
    def fn(k: int) -> Fraction:
        shift = ceil_log2(_magnitude_bound(x) + _magnitude_bound(y) + 1)
        j = k + max(shift, 0)
        return x.approx(j) * y.approx(j)

    return CReal(fn, label="mul")


@dataclass(frozen=True)
class NonzeroWitness:
    """A precision index at which the queried value provably separates from 0.

    Valid for x when |x.approx(k0)| > 2^(-k0+1); then |x| > 2^-k0.
    """

    k0: int


def check_witness(x: CReal, w: NonzeroWitness) -> Fraction:
    """Validate the witness against x; returns a positive lower bound on |x|."""
    if w.k0 < 0:
        raise WitnessError("witness precision must be non-negative")
    r = abs(x.approx(w.k0))
    if r <= pow2(-w.k0 + 1):
        raise WitnessError(
            f"nonzero witness refuted: |approx({w.k0})| = {r} does not exceed 2^{-w.k0 + 1}"
        )
    return r - pow2(-w.k0)


def find_nonzero_witness(x: CReal, max_k: int) -> NonzeroWitness:
    """Search k = 0..max_k for a valid witness; fails explicitly at budget end.

    Comparison with zero is not decidable in general, so the budget and the
    explicit failure are part of the contract.
    """
    for k in range(max_k + 1):
        if abs(x.approx(k)) > pow2(-k + 1):
            return NonzeroWitness(k)
    raise WitnessError(f"no nonzero witness found up to precision {max_k}")


def recip(y: CReal, witness: NonzeroWitness) -> CReal:
    # With L <= |y| (from the witness) and t = ceil_log2(1/L):
    # querying at j >= max(k + 1 + 2t, t + 1) keeps |y_j| >= 2^-(t+1) and
    # |1/y_j - 1/y| <= 2^-j / (2^-t 2^-(t+1)) = 2^(2t+1-j) <= 2^-k.
    low = check_witness(y, witness)
    t = ceil_log2(1 / low)

    def fn(k: int) -> Fraction:
        j = max(k + 1 + 2 * t, t + 1, witness.k0)
        return 1 / y.approx(j)

    return CReal(fn, label="recip")


def div(x: CReal, y: CReal, witness: NonzeroWitness | None = None, *, search_up_to: int | None = None) -> CReal:
    """Quotient x / y; requires a nonzero witness for y (or a search budget)."""
    if witness is None:
        if search_up_to is None:
            raise WitnessError("nonzero witness required for division")
        witness = find_nonzero_witness(y, search_up_to)
    return mul(x, recip(y, witness))


def sqrt(x: CReal) -> CReal:
    """Square root of a non-negative real.

    Queries x at 2k+2 so the radicand error contributes at most
    sqrt(2^-(2k+2)) = 2^-(k+1), then takes a directed rational square root
    within another 2^-(k+1).  Raises if a query certifies x < 0.
    """

    def fn(k: int) -> Fraction:
        j = 2 * k + 2
        r = x.approx(j)
        if r + pow2(-j) < 0:
            raise PreconditionError("negative radicand")
        q = max(r, Fraction(0))
        return sqrt_lower(q, k + 1)

    return CReal(fn, label="sqrt")


_UNARY = {"abs": abs_, "neg": neg, "sqrt": sqrt}
_BINARY = {"add": add, "sub": sub, "mul": mul, "max": max_, "min": min_}


def arith(op: str, x: CReal, y: CReal | None = None, witness: NonzeroWitness | None = None) -> CReal:
    """Name-based dispatcher over the elementary operations."""
    if op in _UNARY:
        return _UNARY[op](x)
    if op in _BINARY:
        if y is None:
            raise ValueError(f"operation {op!r} needs two operands")
        return _BINARY[op](x, y)
    if op == "div":
        if y is None:
            raise ValueError("operation 'div' needs two operands")
        return div(x, y, witness)
    raise ValueError(f"unknown operation {op!r}")


@dataclass(frozen=True)
class CRealSeq:
    """A computable sequence of reals given by a double-indexed rational table.

    approx2(n, k) approximates the n-th member; the modulus e(n, N) returns
    an index k0 such that every k >= k0 is 2^-N accurate for member n.  The
    modulus must be total and non-decreasing in both arguments.
    """

    approx2: Callable[[int, int], Fraction]
    modulus: Callable[[int, int], int]


def effective_limit(seq: CRealSeq) -> Callable[[int], CReal]:
    """Limits of an effectively convergent double sequence, member by member.

    A precision-N query evaluates approx2(n, e(n, N+1)), which is within
    2^-(N+1) <= 2^-N of the limit.
    """

    def member(n: int) -> CReal:
        def fn(k: int) -> Fraction:
            return seq.approx2(n, seq.modulus(n, k + 1))

        return CReal(fn, label=f"limit[{n}]")

    return member


@dataclass(frozen=True)
class Comparison:
    """Outcome of a witnessed comparison at a stated precision.

    Less / Greater are always correct for the true reals; Indistinguishable
    at precision N certifies |x - y| <= 2^(-N+2).
    """

    tag: Literal["Less", "Greater", "Indistinguishable"]
    at_precision: int


def compare_witness(x: CReal, y: CReal, N: int) -> Comparison:
    """Ternary comparison: strict order when enclosures at N+2 separate.

    Exact equality of reals is not decidable from approximations, so overlap
    yields Indistinguishable rather than an answer.
    """
    if N < 0:
        raise ValueError("precision must be non-negative")
    j = N + 2
    r = pow2(-j)
    xa = x.approx(j)
    ya = y.approx(j)
    if xa + r < ya - r:
        return Comparison("Less", N)
    if xa - r > ya + r:
        return Comparison("Greater", N)
    return Comparison("Indistinguishable", N)


def decimal_string(value: Fraction, radius: Fraction, digits: int = 12) -> str:
    """Deterministic decimal rendering of an enclosure center.

    The returned annotation "± 2^-E" is sound: E is the largest integer with
    radius + truncation <= 2^-E (E floors at 0 when the enclosure is wide).
    """
    scale = 10**digits
    scaled = value.numerator * scale
    q, rem = divmod(scaled, value.denominator)
    truncation = Fraction(1, scale)
    sign = ""
    if q < 0:
        if rem:
            q += 1
        q = -q
        sign = "-"
    whole, frac = divmod(q, scale)
    total = radius + truncation
    exponent = 0
    while pow2(-(exponent + 1)) >= total and exponent < 4096:
        exponent += 1
    return f"{sign}{whole}.{frac:0{digits}d} ± 2^-{exponent}"
