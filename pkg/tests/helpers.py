"""Shared test utilities: seeded generators and independent oracles.

The oracles here deliberately take different routes from the library code
they check: spectral lower bounds come from an exact characteristic
polynomial, and square-root enclosures come from plain interval bisection.
"""

from __future__ import annotations

import random
from fractions import Fraction

from pinvkit.exact import GaussRational, QMatrix, QVector, rank_factorize
from pinvkit.iteration import Certificate


def random_fraction(rng: random.Random, num_max: int = 3, den_max: int = 2) -> Fraction:
    return Fraction(rng.randint(-num_max, num_max), rng.randint(1, den_max))


def random_full_rank(rng: random.Random, rows: int, cols: int, complex_entries: bool = False) -> QMatrix:
    """Random rows x cols matrix of rank min(rows, cols)."""
    while True:
        if complex_entries:
            entries = [
                GaussRational(random_fraction(rng), random_fraction(rng))
                for _ in range(rows * cols)
            ]
        else:
            entries = [GaussRational(random_fraction(rng)) for _ in range(rows * cols)]
        M = QMatrix(rows, cols, entries)
        if rank_factorize(M).p == min(rows, cols):
            return M


def random_rank_matrix(
    rng: random.Random, m: int, n: int, r: int, complex_entries: bool = False
) -> QMatrix:
    """Random m x n matrix of exact rank r, built from full-rank factors."""
    if r == 0:
        return QMatrix.zeros(m, n)
    F = random_full_rank(rng, m, r, complex_entries)
    G = random_full_rank(rng, r, n, complex_entries)
    return F @ G


def random_vector(rng: random.Random, m: int, complex_entries: bool = False) -> QVector:
    if complex_entries:
        return QVector(
            m, [GaussRational(random_fraction(rng), random_fraction(rng)) for _ in range(m)]
        )
    return QVector(m, [GaussRational(random_fraction(rng)) for _ in range(m)])


def char_poly(H: QMatrix) -> list[Fraction]:
    """Coefficients [c_1, ..., c_n] of det(xI - H) = x^n + c_1 x^(n-1) + ... + c_n.

    Faddeev-LeVerrier recursion in exact arithmetic.  H must be Hermitian
    (real characteristic coefficients); asserts that the imaginary parts
    vanish.
    """
    n = H.n
    assert H.m == n
    M = QMatrix.identity(n)
    coeffs: list[Fraction] = []
    c = GaussRational(Fraction(1))
    for k in range(1, n + 1):
        HM = H @ M
        tr = GaussRational()
        for i in range(n):
            tr = tr + HM.at(i, i)
        c = GaussRational(Fraction(-1, k)) * tr
        assert c.im == 0, "characteristic coefficients of a Hermitian matrix are real"
        coeffs.append(c.re)
        M = HM + QMatrix.identity(n).scale(c)
    return coeffs


def _poly_eval(poly: list[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(poly):
        acc = acc * x + c
    return acc


def _poly_deriv(poly: list[Fraction]) -> list[Fraction]:
    return [i * c for i, c in enumerate(poly)][1:]


def _poly_rem(num: list[Fraction], den: list[Fraction]) -> list[Fraction]:
    num = list(num)
    while len(num) >= len(den) and any(num):
        if num[-1] == 0:
            num.pop()
            continue
        factor = num[-1] / den[-1]
        shift = len(num) - len(den)
        for i, c in enumerate(den):
            num[shift + i] -= factor * c
        num.pop()
    while num and num[-1] == 0:
        num.pop()
    return num


def _sturm_chain(poly: list[Fraction]) -> list[list[Fraction]]:
    chain = [poly, _poly_deriv(poly)]
    while len(chain[-1]) > 0:
        rem = _poly_rem(chain[-2], chain[-1])
        if not rem:
            break
        chain.append([-c for c in rem])
    return chain


def _sign_variations(chain: list[list[Fraction]], x: Fraction) -> int:
    signs = []
    for poly in chain:
        v = _poly_eval(poly, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _distinct_roots_in(chain: list[list[Fraction]], a: Fraction, b: Fraction) -> int:
    """Number of distinct real roots in the half-open interval (a, b]."""
    return _sign_variations(chain, a) - _sign_variations(chain, b)


def certificate_from_charpoly(A: QMatrix) -> Certificate:
    """Exact, tight positive lower bound on the smallest nonzero eigenvalue
    of A^H A, from its characteristic polynomial.

    With rank p, the characteristic polynomial factors as x^(n-p) g(x) where
    g is monic of degree p whose roots are the positive eigenvalues.  A
    Cauchy bound on the reciprocal roots gives a first valid bound

        lambda_p >= |c_p| / (|c_p| + max(|c_1|, ..., |c_(p-1)|, 1)),

    which Sturm-chain bisection then pushes up until it is within relative
    2^-20 of lambda_p itself.  Tightness matters: it keeps the certified
    stopping index near-optimal, so the iteration does not run long past
    convergence.
    """
    p = rank_factorize(A).p
    assert p >= 1, "certificates require a nonzero matrix"
    H = A.hermitian() @ A
    coeffs = char_poly(H)
    for trailing in coeffs[p:]:
        assert trailing == 0, "rank and characteristic polynomial disagree"
    cp = abs(coeffs[p - 1])
    assert cp > 0
    worst = max([abs(cf) for cf in coeffs[: p - 1]] + [Fraction(1)])
    lo = cp / (cp + worst)

    # g(x), low-to-high coefficients: constant term c_p up to the leading 1.
    g = list(reversed(coeffs[:p])) + [Fraction(1)]
    chain = _sturm_chain(g)
    while _distinct_roots_in(chain, Fraction(0), lo) > 0:
        lo /= 2
    hi = A.frob_norm_sq() + 1  # trace of A^H A bounds every eigenvalue
    assert _distinct_roots_in(chain, Fraction(0), hi) > 0
    steps = 0
    while hi - lo > lo / (1 << 20) and steps < 400:
        mid = (lo + hi) / 2
        if _distinct_roots_in(chain, Fraction(0), mid) > 0:
            hi = mid
        else:
            lo = mid
        steps += 1
    return Certificate(p, lo)


def sqrt_enclosure_bisect(q: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Interval bisection enclosure: lo <= sqrt(q) <= hi with hi - lo <= 2^-bits."""
    assert q >= 0
    lo = Fraction(0)
    hi = max(Fraction(1), q)
    width_target = Fraction(1, 1 << bits)
    while hi - lo > width_target:
        mid = (lo + hi) / 2
        if mid * mid <= q:
            lo = mid
        else:
            hi = mid
    return lo, hi
