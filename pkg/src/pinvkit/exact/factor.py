"""Exact rank factorization and square inversion by Gaussian elimination.

Pivot rule: scan columns left to right; within a column take the smallest
row index holding a nonzero entry.  Exact arithmetic makes magnitude-based
pivoting pointless, and the fixed rule makes factorizations reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import SingularMatrixError
from .matrix import QMatrix
from .scalar import GQ_ONE, GaussRational


@dataclass(frozen=True)
class RankFactorization:
    """A = F G with F of full column rank p and G of full row rank p.

    p = 0 only for the zero matrix, in which case F is m x 0 and G is 0 x n
    and the product F G is still the (zero) matrix A.
    """

    p: int
    F: QMatrix
    G: QMatrix


def _rref(A: QMatrix) -> tuple[list[list[GaussRational]], list[int]]:
    rows = [list(A.row(i)) for i in range(A.m)]
    pivots: list[int] = []
    r = 0
    for c in range(A.n):
        pivot_row = next((i for i in range(r, A.m) if not rows[i][c].is_zero()), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = GQ_ONE / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(A.m):
            if i == r or rows[i][c].is_zero():
                continue
            factor = rows[i][c]
            rows[i] = [v - factor * w for v, w in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows, pivots


def rank_factorize(A: QMatrix) -> RankFactorization:
    """Exact rank factorization via reduced row echelon form.

    G is the nonzero part of rref(A); F collects the pivot columns of A.
    Every column of A is the pivot-column combination encoded by rref, so
    F G = A exactly.
    """
    rows, pivots = _rref(A)
    p = len(pivots)
    G = QMatrix(p, A.n, (v for i in range(p) for v in rows[i]))
    F = QMatrix(A.m, p, (A.at(i, c) for i in range(A.m) for c in pivots))
    return RankFactorization(p, F, G)


def rank(A: QMatrix) -> int:
    return len(_rref(A)[1])


def invert(M: QMatrix) -> QMatrix:
    """Exact inverse of a square matrix; raises SingularMatrixError otherwise."""
    if M.m != M.n:
        raise SingularMatrixError("only square matrices can be inverted")
    n = M.n
    rows = [list(M.row(i)) + list(QMatrix.identity(n).row(i)) for i in range(n)]
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if not rows[i][c].is_zero()), None)
        if pivot_row is None:
            raise SingularMatrixError("matrix is singular")
        rows[c], rows[pivot_row] = rows[pivot_row], rows[c]
        inv = GQ_ONE / rows[c][c]
        rows[c] = [v * inv for v in rows[c]]
        for i in range(n):
            if i == c or rows[i][c].is_zero():
                continue
            factor = rows[i][c]
            rows[i] = [v - factor * w for v, w in zip(rows[i], rows[c])]
    return QMatrix(n, n, (rows[i][n + j] for i in range(n) for j in range(n)))


def determinant(M: QMatrix) -> GaussRational:
    """Exact determinant by fraction-producing elimination with row swaps."""
    if M.m != M.n:
        raise SingularMatrixError("determinant requires a square matrix")
    n = M.n
    rows = [list(M.row(i)) for i in range(n)]
    det = GQ_ONE
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if not rows[i][c].is_zero()), None)
        if pivot_row is None:
            return GaussRational()
        if pivot_row != c:
            rows[c], rows[pivot_row] = rows[pivot_row], rows[c]
            det = -det
        det = det * rows[c][c]
        inv = GQ_ONE / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c].is_zero():
                continue
            factor = rows[i][c] * inv
            rows[i] = [v - factor * w for v, w in zip(rows[i], rows[c])]
    return det
