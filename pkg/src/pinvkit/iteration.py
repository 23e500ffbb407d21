"""Certified pseudoinverse computation by quadratic fixed-point iteration.

The update X -> 2X - XAX with start alpha A^H converges quadratically to
pinv(A) whenever 0 < alpha < 2 / ||A||_2^2.  With alpha = 1/||A||_F^2 and a
caller-supplied spectral certificate (rank p, rational lower bound
lambda <= lambda_p(A^H A)) the error after k steps is provably at most

    lambda^(-1/2) (1 - alpha lambda)^(2^k)        (spectral norm),

because the k-th iterate acts on each singular value sigma of A as
1/sigma (1 - alpha sigma^2)^(2^k) and alpha sigma^2 <= 1 throughout.  The
stored radius is a Frobenius bound, obtained from the spectral one via
||M||_F <= sqrt(min(m, n)) ||M||_2 for the rank-bounded error matrix.

The certificate is an input on purpose: no algorithm can derive a valid
rank or spectral lower bound from approximate data for every matrix, so
certified mode demands side information while heuristic mode demands none
and promises nothing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .ball import BallMatrix, BallScalar, BallVector
from .dyadic import ceil_log2, pow2, pow2k_le, round_to_bits, round_up_sig_bits, sqrt_upper
from .errors import (
    DimensionMismatchError,
    InvalidCertificateError,
    ZeroMatrixError,
)
from .exact.matrix import QMatrix, QVector
from .exact.pinv import frob_norm_sq
from .exact.scalar import GaussRational

DERIVED_TARGETS = ("g_norm", "psi_lsq", "psi_sol", "psi_norm", "kappa")


@dataclass(frozen=True)
class Certificate:
    """Asserted rank and positive rational lower bound on lambda_p(A^H A)."""

    p: int
    lambda_lb: Fraction

    def __post_init__(self) -> None:
        if self.p < 1:
            raise InvalidCertificateError("certificate rank must be at least 1")
        if self.lambda_lb <= 0:
            raise InvalidCertificateError("lambda lower bound must be positive")

    def check_shape(self, A: QMatrix) -> None:
        if self.p > min(A.m, A.n):
            raise InvalidCertificateError(
                f"certificate rank {self.p} exceeds min(m, n) = {min(A.m, A.n)}"
            )


@dataclass
class IterationTrace:
    """Per-step certified error bounds (rational upper bounds, Frobenius norm).

    When requested, `matrices` holds the actual iterates (index k matching
    the bounds), so the observed error can be replayed against an oracle.
    """

    alpha: Fraction
    iterates: list[tuple[int, Fraction]] = field(default_factory=list)
    stopped_at: int = 0
    certificate_flag: str | None = None
    matrices: list[QMatrix] | None = None

    def render_lines(self) -> list[str]:
        lines = [f"{k} {b.numerator}/{b.denominator}" for k, b in self.iterates]
        lines.append(f"stopped_at {self.stopped_at}")
        return lines


@dataclass(frozen=True)
class HeuristicDiagnostics:
    """Stopping report for the uncertified mode; carries no correctness claim."""

    reason: str
    iterations: int
    last_step_sq: Fraction | None


def alpha_init(A: QMatrix) -> Fraction:
    """Step scale 1 / ||A||_F^2; valid since ||A||_2 <= ||A||_F."""
    s = frob_norm_sq(A)
    if s == 0:
        raise ZeroMatrixError("alpha undefined for zero matrix")
    return 1 / s


def ben_israel_step(X: QMatrix, A: QMatrix) -> QMatrix:
    """One exact update 2X - XAX."""
    if X.m != A.n or X.n != A.m:
        raise DimensionMismatchError(
            f"iterate must be {A.n}x{A.m} for a {A.m}x{A.n} matrix, got {X.m}x{X.n}"
        )
    XA = X @ A
    return X.scale(2) - (XA @ X)


def iterations_needed(cert: Certificate, alpha: Fraction, N: int) -> int:
    """Smallest k with lambda^(-1/2) (1 - alpha lambda)^(2^k) <= 2^-N.

    Decided on squares: (1 - alpha lambda)^(2^(k+1)) <= lambda 2^(-2N),
    evaluated exactly (see dyadic.pow2k_le).
    """
    if N < 0:
        raise ValueError("precision must be non-negative")
    x = alpha * cert.lambda_lb
    if x <= 0 or x > 1:
        raise InvalidCertificateError(
            "alpha * lambda_lb must lie in (0, 1]; the certificate is inconsistent"
        )
    q = 1 - x
    threshold = cert.lambda_lb * pow2(-2 * N)
    k = 0
    while not pow2k_le(q, k + 1, threshold):
        k += 1
        if k > 10_000:
            raise InvalidCertificateError("stopping index diverged; certificate invalid")
    return k


def _sqrt_factor_bits(mn: int) -> int:
    """Smallest s with 2^s >= sqrt(mn)."""
    s = 0
    while (1 << (2 * s)) < mn:
        s += 1
    return s


class _UpperPow:
    """Monotone dyadic upper bounds on q^(2^k), refined by round-up squaring."""

    def __init__(self, q: Fraction, g: int) -> None:
        self.g = g
        self.scaled = -((-q.numerator << g) // q.denominator)  # ceil(q * 2^g)

    def square(self) -> None:
        self.scaled = (self.scaled * self.scaled + (1 << self.g) - 1) >> self.g

    def value(self) -> Fraction:
        return Fraction(self.scaled, 1 << self.g)


def _maybe_round(X: QMatrix, bits: int) -> tuple[QMatrix, Fraction]:
    """Dyadic rounding of every entry to `bits` fractional bits.

    Skipped entirely while entries are already small, so exact fixed points
    stay exact.  Returns the (possibly unchanged) matrix and an exact upper
    bound on the Frobenius distance introduced.
    """
    limit = bits + 64
    if all(
        e.re.denominator.bit_length() <= limit and e.im.denominator.bit_length() <= limit
        for e in X.entries()
    ):
        return X, Fraction(0)
    rounded: list[GaussRational] = []
    err_sq = Fraction(0)
    for e in X.entries():
        re = round_to_bits(e.re, bits)
        im = round_to_bits(e.im, bits)
        err_sq += (re - e.re) ** 2 + (im - e.im) ** 2
        rounded.append(GaussRational(re, im))
    Xr = QMatrix(X.m, X.n, rounded)
    return Xr, sqrt_upper(err_sq, bits)


def pinv_certified(
    A: QMatrix,
    cert: Certificate,
    N: int,
    *,
    validate: bool = True,
    keep_iterates: bool = False,
) -> tuple[BallMatrix, IterationTrace]:
    """Enclosure of pinv(A) with Frobenius radius at most 2^-N.

    The iteration runs on exact rationals with dyadic rounding once entries
    grow large; rounding error is amplified through later steps by an exact
    per-step Lipschitz bound and added to the radius.  The certificate is
    trusted; an optional residual check flags certificates that are
    provably inconsistent with the claimed radius.
    """
    if A.is_zero():
        raise ZeroMatrixError("certified pseudoinverse undefined for zero matrix")
    cert.check_shape(A)
    alpha = alpha_init(A)
    x = alpha * cert.lambda_lb
    if x > 1:
        raise InvalidCertificateError(
            "lambda lower bound exceeds ||A||_F^2; the certificate is invalid"
        )
    q = 1 - x
    mn = min(A.m, A.n)
    s_bits = _sqrt_factor_bits(mn)
    n_prime = N + 1 + s_bits
    k_stop = iterations_needed(cert, alpha, n_prime)

    # Rational upper bounds used in the error accounting.
    lam_inv_sqrt_up = sqrt_upper(1 / cert.lambda_lb, n_prime + 16)
    a_up = sqrt_upper(frob_norm_sq(A), 32)
    f_up = pow2(s_bits)

    # Rounding granularity: fine enough that debts amplified by the worst
    # per-step Lipschitz factor stay below 2^-(N+2).
    x_max = 2 * f_up * lam_inv_sqrt_up + 1
    lip_max = 2 + a_up * (2 * x_max + 1)
    safe_bits = N + 2 + k_stop * max(ceil_log2(lip_max), 1) + (k_stop + 1).bit_length() + s_bits + 4
    round_bits = max(4 * (N + k_stop), safe_bits)

    # Dyadic precision for the reported bound sequence: keeps the round-up
    # slack well below both the step-to-step decrease and the final bound.
    g = 2 * n_prime + (ceil_log2(1 / x) if x < 1 else 0) + 64

    X = A.hermitian().scale(alpha)
    upper = _UpperPow(q, g)

    # Reported bounds are rounded up to a significant-bit budget fine enough
    # to preserve their strict decrease (relative decrease per step is at
    # least alpha * lambda): compact and still upper bounds.
    sig_bits = max(64, (ceil_log2(1 / x) if x < 1 else 1) + 8)

    def bound_now() -> Fraction:
        exact = f_up * lam_inv_sqrt_up * upper.value()
        return round_up_sig_bits(exact, sig_bits)

    trace = IterationTrace(alpha=alpha)
    trace.iterates.append((0, bound_now()))
    if keep_iterates:
        trace.matrices = [X]

    debt = Fraction(0)
    for k in range(1, k_stop + 1):
        x_norm_up = sqrt_upper(frob_norm_sq(X), 32)
        lip = 2 + a_up * (2 * x_norm_up + debt)
        Xn = ben_israel_step(X, A)
        Xn, rho = _maybe_round(Xn, round_bits)
        if debt or rho:
            # Compact the debt to a dyadic upper bound: keeps every later
            # product small instead of letting denominators compound.
            debt = round_up_sig_bits(lip * debt + rho, 96)
        X = Xn
        upper.square()
        trace.iterates.append((k, bound_now()))
        if trace.matrices is not None:
            trace.matrices.append(X)

    trace.stopped_at = k_stop
    radius = trace.iterates[-1][1] + debt
    target = pow2(-N)
    if radius > target:
        # Conservative round-ups overshot; the true bound cannot, so clamp is
        # unsound -- refuse instead (unreachable by the margin analysis).
        raise InvalidCertificateError("internal error: radius budget exceeded")

    ball = BallMatrix(X, radius)
    if validate:
        # ||A X A - A||_F <= ||A||_2^2 ||X - pinv(A)||_F when the certificate
        # holds, so a larger residual refutes it.
        residual = (A @ X @ A) - A
        bound = a_up * a_up * radius
        if residual.frob_norm_sq() > bound * bound:
            trace.certificate_flag = "certificate likely invalid"
    return ball, trace


def pinv_heuristic(
    A: QMatrix, tol: Fraction, max_iter: int
) -> tuple[QMatrix, HeuristicDiagnostics]:
    """Iterate until consecutive iterates are closer than tol, or give up.

    No correctness guarantee is offered or possible: small steps do not
    imply small error (no universal certified stopping rule exists), and
    the uncertified answer can be arbitrarily far from pinv(A).
    """
    if A.is_zero():
        raise ZeroMatrixError("heuristic pseudoinverse undefined for zero matrix")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1")
    alpha = alpha_init(A)
    bits = max(128, 4 * max(ceil_log2(1 / tol), 1))
    X = A.hermitian().scale(alpha)
    tol_sq = tol * tol
    last_step_sq: Fraction | None = None
    for i in range(1, max_iter + 1):
        Xn, _ = _maybe_round(ben_israel_step(X, A), bits)
        last_step_sq = (Xn - X).frob_norm_sq()
        X = Xn
        if last_step_sq <= tol_sq:
            return X, HeuristicDiagnostics("step_within_tol", i, last_step_sq)
    return X, HeuristicDiagnostics("max_iter_reached", max_iter, last_step_sq)


def _sqrt_ball(value_sq: Fraction, extra_radius: Fraction, N: int) -> BallScalar:
    """Enclosure of sqrt(value_sq) widened by extra_radius."""
    from . import creal

    center = creal.sqrt(creal.from_rational(value_sq)).approx(N + 2)
    return BallScalar(center, pow2(-(N + 2)) + extra_radius)


def derived_certified(
    which: str,
    A: QMatrix,
    cert: Certificate,
    N: int,
    b: QVector | None = None,
) -> BallScalar | BallVector:
    """Certified enclosures for the derived quantities, half-width <= 2^-N.

    which: one of g_norm (Frobenius norm of the pseudoinverse), psi_lsq
    (least-squares optimum), psi_sol (minimum-norm solution), psi_norm (its
    Euclidean norm), kappa (Frobenius condition number).  The psi_* targets
    need the right-hand side b.
    """
    if which not in DERIVED_TARGETS:
        raise ValueError(f"unknown derived target {which!r}")
    if which in ("psi_lsq", "psi_sol", "psi_norm"):
        if b is None:
            raise DimensionMismatchError(f"target {which} requires a right-hand side")
        if b.m != A.m:
            raise DimensionMismatchError(
                f"vector of length {b.m} does not match {A.m} rows"
            )

    if which == "g_norm":
        ball, _ = pinv_certified(A, cert, N + 1)
        return _sqrt_ball(frob_norm_sq(ball.center), ball.radius, N)

    if which == "kappa":
        a_sq = frob_norm_sq(A)
        a_up = sqrt_upper(a_sq, 16)
        inner = N + 1 + max(ceil_log2(a_up), 0)
        ball, _ = pinv_certified(A, cert, inner)
        return _sqrt_ball(a_sq * frob_norm_sq(ball.center), a_up * ball.radius, N)

    assert b is not None
    b_up = sqrt_upper(b.norm_sq(), 16)
    b_shift = max(ceil_log2(b_up), 0) if b_up > 0 else 0

    if which == "psi_sol":
        ball, _ = pinv_certified(A, cert, N + 1 + b_shift)
        return BallVector(ball.center.apply(b), b_up * ball.radius)

    if which == "psi_norm":
        ball, _ = pinv_certified(A, cert, N + 1 + b_shift)
        xc = ball.center.apply(b)
        return _sqrt_ball(xc.norm_sq(), b_up * ball.radius, N)

    # psi_lsq: the optimum equals ||A xhat - b||; replacing xhat by the
    # enclosure center moves the value by at most ||A||_F ||b|| radius.
    a_up = sqrt_upper(frob_norm_sq(A), 16)
    a_shift = max(ceil_log2(a_up), 0)
    ball, _ = pinv_certified(A, cert, N + 2 + a_shift + b_shift)
    xc = ball.center.apply(b)
    residual_sq = (A.apply(xc) - b).norm_sq()
    return _sqrt_ball(residual_sq, a_up * b_up * ball.radius, N)
