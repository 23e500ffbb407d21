"""The two-parameter perturbation family behind the lower-bound games.

A family point at scale eps is the m-by-n matrix with 1 at (0, 0), eps at
(1, 1) and zeros elsewhere, paired with the fixed right-hand side
b = (1, 1, 0, ..., 0).  Shrinking eps moves the matrix an arbitrarily small
distance while its pseudoinverse moves by 1/eps, which is exactly the
discontinuity all the games exploit.  Every derived quantity has a closed
form, kept here as exact rationals (squared where the value is irrational).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dyadic import sqrt_exact, sqrt_lower
from .errors import InputError
from .exact.matrix import QMatrix, QVector
from .exact.scalar import GQ_ONE, GQ_ZERO, GaussRational

FUNCTION_NAMES = ("g_inv", "g_norm", "psi_lsq", "psi_sol", "psi_norm", "kappa")


@dataclass(frozen=True)
class FamilyPoint:
    m: int
    n: int
    eps: Fraction
    A: QMatrix
    b: QVector


def make_family_point(m: int, n: int, eps: Fraction | int) -> FamilyPoint:
    """Family member at scale eps; requires m, n >= 2 and eps >= 0."""
    eps = Fraction(eps)
    if m < 2 or n < 2:
        raise InputError("family points need m, n >= 2")
    if eps < 0:
        raise InputError("eps must be non-negative")
    entries = [GQ_ZERO] * (m * n)
    entries[0] = GQ_ONE
    entries[n + 1] = GaussRational(eps)
    A = QMatrix(m, n, entries)
    b = QVector(m, [GQ_ONE, GQ_ONE] + [GQ_ZERO] * (m - 2))
    return FamilyPoint(m, n, eps, A, b)


@dataclass(frozen=True)
class ClosedForms:
    """Exact values of all six derived quantities at one family point."""

    pinv: QMatrix
    g_norm_sq: Fraction
    psi_lsq_sq: Fraction
    xhat: QVector
    psi_norm_sq: Fraction
    kappa_sq: Fraction


def closed_forms(pt: FamilyPoint) -> ClosedForms:
    m, n, eps = pt.m, pt.n, pt.eps
    entries = [GQ_ZERO] * (n * m)
    entries[0] = GQ_ONE
    xhat_entries = [GQ_ONE] + [GQ_ZERO] * (n - 1)
    if eps > 0:
        entries[m + 1] = GaussRational(1 / eps)
        xhat_entries[1] = GaussRational(1 / eps)
        g_norm_sq = 1 + 1 / (eps * eps)
        psi_lsq_sq = Fraction(0)
        psi_norm_sq = 1 + 1 / (eps * eps)
        kappa_sq = (1 + eps * eps) * (1 + 1 / (eps * eps))
    else:
        g_norm_sq = Fraction(1)
        psi_lsq_sq = Fraction(1)
        psi_norm_sq = Fraction(1)
        kappa_sq = Fraction(1)
    return ClosedForms(
        pinv=QMatrix(n, m, entries),
        g_norm_sq=g_norm_sq,
        psi_lsq_sq=psi_lsq_sq,
        xhat=QVector(n, xhat_entries),
        psi_norm_sq=psi_norm_sq,
        kappa_sq=kappa_sq,
    )


@dataclass(frozen=True)
class Gap:
    """A non-negative gap value sqrt(radicand) + shift, decidable exactly.

    The representation keeps irrational gaps honest: comparisons against
    rationals reduce to exact squared inequalities.
    """

    radicand: Fraction
    shift: Fraction = Fraction(0)

    def exact_value(self) -> Fraction | None:
        root = sqrt_exact(self.radicand)
        if root is None:
            return None
        return root + self.shift

    def at_least(self, eta: Fraction) -> bool:
        """Exact decision of sqrt(radicand) + shift >= eta."""
        rhs = eta - self.shift
        if rhs <= 0:
            return True
        return self.radicand >= rhs * rhs

    def lower_bound(self, bits: int = 40) -> Fraction:
        return sqrt_lower(self.radicand, bits) + self.shift

    def render(self) -> str:
        exact = self.exact_value()
        if exact is not None:
            if exact.denominator == 1:
                return str(exact.numerator)
            return f"{exact.numerator}/{exact.denominator}"
        shift = self.shift
        suffix = "" if shift == 0 else (f"{shift}" if shift < 0 else f"+{shift}")
        return f"sqrt({self.radicand}){suffix}"


@dataclass(frozen=True)
class GapRow:
    """Gaps between the family point at eps = 2^-n and the eps = 0 point."""

    n: int
    gaps: dict[str, Gap]


def _exact_sqrt_or_fail(value_sq: Fraction) -> Fraction:
    root = sqrt_exact(value_sq)
    if root is None:
        raise AssertionError(f"expected a perfect square, got {value_sq}")
    return root


def gap_row(n: int, m: int = 3, cols: int = 2) -> GapRow:
    """Row n of the gap table, computed from the closed forms."""
    eps = Fraction(1, 1 << n)
    cf_eps = closed_forms(make_family_point(m, cols, eps))
    cf_zero = closed_forms(make_family_point(m, cols, Fraction(0)))
    diff_pinv = (cf_eps.pinv - cf_zero.pinv).frob_norm_sq()
    diff_sol = (cf_eps.xhat - cf_zero.xhat).norm_sq()
    gaps = {
        "g_inv": Gap(diff_pinv),
        "g_norm": Gap(cf_eps.g_norm_sq, -_exact_sqrt_or_fail(cf_zero.g_norm_sq)),
        # The eps > 0 residual vanishes, so the gap is the eps = 0 optimum.
        "psi_lsq": Gap(cf_zero.psi_lsq_sq),
        "psi_sol": Gap(diff_sol),
        "psi_norm": Gap(cf_eps.psi_norm_sq, -_exact_sqrt_or_fail(cf_zero.psi_norm_sq)),
        "kappa": Gap(cf_eps.kappa_sq, -_exact_sqrt_or_fail(cf_zero.kappa_sq)),
    }
    return GapRow(n, gaps)


def gap_table(n_max: int, m: int = 3, cols: int = 2) -> list[GapRow]:
    if n_max < 1:
        raise InputError("n_max must be at least 1")
    return [gap_row(n, m, cols) for n in range(1, n_max + 1)]


# Fixed separation thresholds per function: the family gaps stay at or above
# these rationals for every index n >= 1.
SEPARATION_ETA: dict[str, Fraction] = {
    "g_inv": Fraction(2),
    "g_norm": Fraction(1),
    "psi_lsq": Fraction(1),
    "psi_sol": Fraction(2),
    "psi_norm": Fraction(1),
    "kappa": Fraction(1),
}


def separation_check(n_max: int, functions: tuple[str, ...] | None = None) -> bool:
    """Exact verification that every tabulated gap meets its threshold.

    Also checks the growing lower bounds: the g_inv and psi_sol gaps equal
    2^n, and the g_norm, psi_norm and kappa gaps are at least n.
    """
    names = functions if functions is not None else FUNCTION_NAMES
    for name in names:
        if name not in SEPARATION_ETA:
            raise InputError(f"unknown function {name!r}")
    for row in gap_table(n_max):
        for name in names:
            gap = row.gaps[name]
            if not gap.at_least(SEPARATION_ETA[name]):
                return False
            if name in ("g_inv", "psi_sol") and gap.exact_value() != Fraction(1 << row.n):
                return False
            if name in ("g_norm", "psi_norm", "kappa") and not gap.at_least(Fraction(row.n)):
                return False
    return True
