"""Exact pseudoinverse and the derived quantities, all in rational arithmetic.

Norms whose true value may be irrational are exposed squared so that every
result here is an exact Fraction; square roots live in the creal module.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import DimensionMismatchError
from .factor import invert, rank_factorize
from .matrix import QMatrix, QVector


def pinv_exact(A: QMatrix) -> QMatrix:
    """The unique matrix satisfying all four Penrose conditions, exactly.

    Computed from a rank factorization A = F G as
    G^H (G G^H)^-1 (F^H F)^-1 F^H; for the zero matrix the result is the
    zero matrix of transposed shape.
    """
    rf = rank_factorize(A)
    if rf.p == 0:
        return QMatrix.zeros(A.n, A.m)
    FH = rf.F.hermitian()
    GH = rf.G.hermitian()
    return GH @ invert(rf.G @ GH) @ invert(FH @ rf.F) @ FH


def penrose_check(A: QMatrix, X: QMatrix) -> bool:
    """Whether X satisfies A X A = A, X A X = X, (A X)^H = A X, (X A)^H = X A."""
    if X.m != A.n or X.n != A.m:
        raise DimensionMismatchError(
            f"candidate must be {A.n}x{A.m} for a {A.m}x{A.n} matrix, got {X.m}x{X.n}"
        )
    AX = A @ X
    XA = X @ A
    return (
        AX @ A == A
        and XA @ X == X
        and AX.hermitian() == AX
        and XA.hermitian() == XA
    )


def frob_norm_sq(A: QMatrix) -> Fraction:
    """Sum of squared entry magnitudes; zero iff A is the zero matrix."""
    return A.frob_norm_sq()


def lsq_exact(A: QMatrix, b: QVector) -> tuple[QVector, Fraction]:
    """Minimum-norm least-squares solution and the squared residual.

    Returns (xhat, ||A xhat - b||_2^2) with xhat = pinv(A) b, the unique
    minimizer of smallest Euclidean norm.
    """
    if b.m != A.m:
        raise DimensionMismatchError(f"vector of length {b.m} does not match {A.m} rows")
    xhat = pinv_exact(A).apply(b)
    residual = A.apply(xhat) - b
    return xhat, residual.norm_sq()


def cond_sq_exact(A: QMatrix) -> Fraction:
    """Squared Frobenius condition number ||A||_F^2 ||pinv(A)||_F^2.

    For the zero matrix both factors vanish, so the convention here is
    cond_sq_exact(0) = 0.
    """
    return frob_norm_sq(A) * frob_norm_sq(pinv_exact(A))
