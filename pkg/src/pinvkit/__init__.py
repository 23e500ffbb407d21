"""pinvkit: exact and certified pseudoinverse computation over the rationals.

Core layers:

- exact:      Gaussian-rational linear algebra, rank factorization, exact
              pseudoinverse and derived quantities.
- creal:      computable reals as precision-query functions.
- iteration:  certified quadratic iteration with spectral certificates,
              plus a deliberately uncertified heuristic mode.
- family:     the perturbation family with closed forms and gap tables.
- adversary:  oracle games realizing worst-case error lower bounds.
- machine:    step-counted register machines driving matrix sequences.
- service:    FastAPI surface with exact text payloads.
- cli:        thin command-line client over the service handlers.
"""

from .ball import BallMatrix, BallScalar, BallVector
from .exact import (
    GaussRational,
    QMatrix,
    QVector,
    RankFactorization,
    cond_sq_exact,
    frob_norm_sq,
    lsq_exact,
    parse_matrix,
    parse_vector,
    penrose_check,
    pinv_exact,
    rank_factorize,
)
from .iteration import (
    Certificate,
    HeuristicDiagnostics,
    IterationTrace,
    alpha_init,
    ben_israel_step,
    derived_certified,
    iterations_needed,
    pinv_certified,
    pinv_heuristic,
)

__version__ = "0.1.0"

__all__ = [
    "BallMatrix",
    "BallScalar",
    "BallVector",
    "Certificate",
    "GaussRational",
    "HeuristicDiagnostics",
    "IterationTrace",
    "QMatrix",
    "QVector",
    "RankFactorization",
    "alpha_init",
    "ben_israel_step",
    "cond_sq_exact",
    "derived_certified",
    "frob_norm_sq",
    "iterations_needed",
    "lsq_exact",
    "parse_matrix",
    "parse_vector",
    "penrose_check",
    "pinv_certified",
    "pinv_exact",
    "pinv_heuristic",
    "rank_factorize",
]
