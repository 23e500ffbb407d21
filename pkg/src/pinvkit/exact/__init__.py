"""Exact rational and Gaussian-rational linear algebra."""

from .factor import RankFactorization, determinant, invert, rank, rank_factorize
from .matrix import QMatrix, QVector, parse_matrix, parse_vector
from .pinv import cond_sq_exact, frob_norm_sq, lsq_exact, penrose_check, pinv_exact
from .scalar import (
    GQ_ONE,
    GQ_ZERO,
    GaussRational,
    Rat,
    format_entry,
    format_rational,
    gq,
    parse_entry,
    parse_rational,
)

__all__ = [
    "GQ_ONE",
    "GQ_ZERO",
    "GaussRational",
    "QMatrix",
    "QVector",
    "RankFactorization",
    "Rat",
    "cond_sq_exact",
    "determinant",
    "format_entry",
    "format_rational",
    "frob_norm_sq",
    "gq",
    "invert",
    "lsq_exact",
    "parse_entry",
    "parse_matrix",
    "parse_rational",
    "parse_vector",
    "penrose_check",
    "pinv_exact",
    "rank",
    "rank_factorize",
]
