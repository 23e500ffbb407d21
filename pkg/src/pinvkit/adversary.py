"""Interactive oracle games that exhibit worst-case error lower bounds.

The game: an algorithm queries entries of a hidden matrix at chosen
precisions, then commits an output for a chosen target quantity.  The
oracle answers every query with the entries of the degenerate family point
(scale 0), which is consistent with every sufficiently small positive
scale.  After commitment it reveals the scale 2^-(K+1), where 2^-K is the
finest precision queried, so every answer is retroactively correct, yet
the revealed instance's true pseudoinverse-derived values sit far from the
degenerate ones.  The committed output therefore errs badly against the
revealed truth, no matter what the algorithm did.

A reveal floor can push the revealed scale smaller still (this only
improves consistency), which makes the exhibited error exceed any fixed
target against algorithms that query little or not at all.

Only deterministic algorithms are admitted, so every transcript replays
bit for bit.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Protocol, Sequence, Union

from .dyadic import pow2, sqrt_lower, sqrt_upper
from .errors import InputError
from .exact.matrix import QMatrix, QVector
from .exact.pinv import frob_norm_sq, lsq_exact, pinv_exact
from .exact.scalar import format_rational, parse_rational
from .family import FamilyPoint, closed_forms, make_family_point
from .iteration import Certificate, pinv_certified, pinv_heuristic

TARGETS = ("g_inv", "g_norm", "psi_lsq", "psi_sol", "psi_norm", "kappa")

CommittedValue = Union[QMatrix, QVector, Fraction]


@dataclass(frozen=True)
class Query:
    row: int
    col: int
    precision: int


@dataclass(frozen=True)
class Commit:
    output: CommittedValue
    claimed_radius: Fraction | None = None


@dataclass(frozen=True)
class AnsweredQuery:
    query: Query
    answer: Fraction


class QueryAlgorithm(Protocol):
    """Single-method contract: history of answered queries -> next move."""

    spec: str

    def move(self, answered: Sequence[AnsweredQuery]) -> Query | Commit: ...


@dataclass
class Transcript:
    target: str
    algorithm_spec: str
    budget: int
    dims: tuple[int, int]
    reveal_floor: int
    queries: list[AnsweredQuery] = field(default_factory=list)
    committed: CommittedValue | None = None
    claimed_radius: Fraction | None = None
    revealed: FamilyPoint | None = None
    achieved_error: Fraction | None = None
    achieved_error_sq: Fraction | None = None
    non_terminating: bool = False

    def finest_precision(self) -> int:
        return max((aq.query.precision for aq in self.queries), default=0)

    def check_consistency(self) -> bool:
        """Every answer within 2^-k of the revealed instance's entry, exactly."""
        if self.revealed is None:
            return False
        for aq in self.queries:
            true_entry = self.revealed.A.at(aq.query.row, aq.query.col)
            if true_entry.im != 0:
                return False
            if abs(aq.answer - true_entry.re) > pow2(-aq.query.precision):
                return False
        return True

    def render(self) -> str:
        lines = [
            f"TARGET {self.target}",
            f"ALG {self.algorithm_spec}",
            f"BUDGET {self.budget}",
            f"DIMS {self.dims[0]} {self.dims[1]}",
            f"FLOOR {self.reveal_floor}",
        ]
        for aq in self.queries:
            lines.append(
                f"Q {aq.query.row} {aq.query.col} {aq.query.precision} "
                f"{format_rational(aq.answer)}"
            )
        if self.non_terminating:
            lines.append("NONTERMINATING within budget")
        elif self.committed is not None:
            lines.append(f"COMMIT {commit_hash(self.committed)}")
        if self.revealed is not None:
            lines.append(f"REVEAL {format_rational(self.revealed.eps)}")
        if self.achieved_error is not None:
            lines.append(f"ERROR {format_rational(self.achieved_error)}")
        return "\n".join(lines) + "\n"


def commit_hash(value: CommittedValue) -> str:
    if isinstance(value, QMatrix):
        text = value.to_text()
    elif isinstance(value, QVector):
        text = value.to_text()
    else:
        text = format_rational(value) + "\n"
    return hashlib.sha256(text.encode()).hexdigest()


def _true_value_sq(target: str, pt: FamilyPoint) -> Fraction:
    cf = closed_forms(pt)
    if target == "g_norm":
        return cf.g_norm_sq
    if target == "psi_lsq":
        return cf.psi_lsq_sq
    if target == "psi_norm":
        return cf.psi_norm_sq
    if target == "kappa":
        return cf.kappa_sq
    raise InputError(f"not a scalar target: {target}")


def _scalar_error(claimed: Fraction, true_sq: Fraction, bits: int = 40) -> tuple[Fraction, Fraction]:
    """(lower bound on |claimed - sqrt(true_sq)|, exact squared error proxy).

    The squared proxy is (claimed - sqrt)^2 when exact, else derived from
    the lower bound; both are rationals safe for >= comparisons.
    """
    if claimed * claimed >= true_sq:
        err = claimed - sqrt_upper(true_sq, bits)
    else:
        err = sqrt_lower(true_sq, bits) - claimed
    err = max(err, Fraction(0))
    return err, err * err


def _measure_error(target: str, committed: CommittedValue, pt: FamilyPoint) -> tuple[Fraction, Fraction]:
    """(rational lower bound on the error, exact squared error when available)."""
    cf = closed_forms(pt)
    if target == "g_inv":
        if not isinstance(committed, QMatrix):
            raise InputError("g_inv commitments must be matrices")
        err_sq = (committed - cf.pinv).frob_norm_sq()
        return sqrt_lower(err_sq, 40), err_sq
    if target == "psi_sol":
        if not isinstance(committed, QVector):
            raise InputError("psi_sol commitments must be vectors")
        err_sq = (committed - cf.xhat).norm_sq()
        return sqrt_lower(err_sq, 40), err_sq
    if not isinstance(committed, Fraction):
        raise InputError(f"{target} commitments must be rational scalars")
    return _scalar_error(committed, _true_value_sq(target, pt))


def run_adversary(
    alg: QueryAlgorithm,
    target: str,
    budget: int,
    dims: tuple[int, int] = (3, 2),
    reveal_floor: int = 0,
) -> Transcript:
    """Play one oracle game against a deterministic algorithm.

    budget bounds the number of entry queries; an algorithm that does not
    commit within it gets a non-terminating transcript (the game cannot
    wait forever, mirroring why termination cannot be promised in general).
    reveal_floor forces the revealed scale index to be at least that large.
    """
    if target not in TARGETS:
        raise InputError(f"unknown target {target!r}")
    if budget < 0:
        raise InputError("budget must be non-negative")
    m, n = dims
    base = make_family_point(m, n, Fraction(0))
    transcript = Transcript(
        target=target,
        algorithm_spec=alg.spec,
        budget=budget,
        dims=dims,
        reveal_floor=reveal_floor,
    )
    committed: Commit | None = None
    while True:
        move = alg.move(tuple(transcript.queries))
        if isinstance(move, Commit):
            committed = move
            break
        if len(transcript.queries) >= budget:
            transcript.non_terminating = True
            break
        if not (0 <= move.row < m and 0 <= move.col < n):
            raise InputError(f"query out of range: ({move.row}, {move.col})")
        if move.precision < 0:
            raise InputError("query precision must be non-negative")
        answer = base.A.at(move.row, move.col).re
        transcript.queries.append(AnsweredQuery(move, answer))

    reveal_index = max(transcript.finest_precision() + 1, reveal_floor, 1)
    revealed = make_family_point(m, n, Fraction(1, 1 << reveal_index))
    transcript.revealed = revealed
    if committed is not None:
        transcript.committed = committed.output
        transcript.claimed_radius = committed.claimed_radius
        err, err_sq = _measure_error(target, committed.output, revealed)
        transcript.achieved_error = err
        transcript.achieved_error_sq = err_sq
    return transcript


# -- bundled deterministic algorithms ---------------------------------------


def _matrix_from_answers(dims: tuple[int, int], answered: Sequence[AnsweredQuery]) -> QMatrix:
    m, n = dims
    entries = [Fraction(0)] * (m * n)
    for aq in answered:
        entries[aq.query.row * n + aq.query.col] = aq.answer
    return QMatrix(m, n, entries)


def _family_rhs(m: int) -> QVector:
    return make_family_point(m, 2, Fraction(0)).b


def _commit_for_target(target: str, A_seen: QMatrix, X: QMatrix, bits: int) -> CommittedValue:
    """Derive the committed value for `target` from a pseudoinverse estimate X."""
    b = _family_rhs(A_seen.m)
    if target == "g_inv":
        return X
    if target == "psi_sol":
        return X.apply(b)
    if target == "g_norm":
        return sqrt_lower(frob_norm_sq(X), bits)
    if target == "psi_norm":
        return sqrt_lower(X.apply(b).norm_sq(), bits)
    if target == "kappa":
        return sqrt_lower(frob_norm_sq(A_seen) * frob_norm_sq(X), bits)
    # psi_lsq: residual of the estimated solution on the seen data.
    xhat = X.apply(b)
    return sqrt_lower((A_seen.apply(xhat) - b).norm_sq(), bits)


class _FullScanAlgorithm:
    """Shared query plan: read every entry at one precision, then commit."""

    def __init__(self, target: str, dims: tuple[int, int], precision: int) -> None:
        self.target = target
        self.dims = dims
        self.precision = precision

    def move(self, answered: Sequence[AnsweredQuery]) -> Query | Commit:
        m, n = self.dims
        idx = len(answered)
        if idx < m * n:
            return Query(idx // n, idx % n, self.precision)
        A_seen = _matrix_from_answers(self.dims, answered)
        return self._commit(A_seen)

    def _commit(self, A_seen: QMatrix) -> Commit:
        raise NotImplementedError


class RoundedExactAlgorithm(_FullScanAlgorithm):
    """Queries all entries at precision k, then runs the exact pseudoinverse
    on what it saw.  Exact arithmetic on rounded data is still wrong data."""

    def __init__(self, target: str, dims: tuple[int, int], precision: int) -> None:
        super().__init__(target, dims, precision)
        self.spec = f"round-exact@{precision}"

    def _commit(self, A_seen: QMatrix) -> Commit:
        if self.target == "psi_lsq":
            _, residual_sq = lsq_exact(A_seen, _family_rhs(A_seen.m))
            return Commit(sqrt_lower(residual_sq, 2 * self.precision + 8))
        X = pinv_exact(A_seen)
        return Commit(_commit_for_target(self.target, A_seen, X, 2 * self.precision + 8))


class HeuristicIterationAlgorithm(_FullScanAlgorithm):
    """Queries all entries, then iterates with a small-step stopping rule."""

    def __init__(
        self,
        target: str,
        dims: tuple[int, int],
        precision: int,
        tol: Fraction = Fraction(1, 1 << 20),
        max_iter: int = 64,
    ) -> None:
        super().__init__(target, dims, precision)
        self.tol = tol
        self.max_iter = max_iter
        self.spec = f"heuristic@{precision}:{format_rational(tol)}:{max_iter}"

    def _commit(self, A_seen: QMatrix) -> Commit:
        X, _ = pinv_heuristic(A_seen, self.tol, self.max_iter)
        return Commit(_commit_for_target(self.target, A_seen, X, 2 * self.precision + 8))


class ConstantAlgorithm:
    """Commits a target-shaped zero immediately, without querying."""

    def __init__(self, target: str, dims: tuple[int, int]) -> None:
        self.target = target
        self.dims = dims
        self.spec = "constant"

    def move(self, answered: Sequence[AnsweredQuery]) -> Query | Commit:
        m, n = self.dims
        if self.target == "g_inv":
            return Commit(QMatrix.zeros(n, m))
        if self.target == "psi_sol":
            return Commit(QVector(n, [Fraction(0)] * n))
        return Commit(Fraction(0))


class CertifiedClaimAlgorithm(_FullScanAlgorithm):
    """Runs the certified iteration with a fixed, caller-asserted certificate.

    Sound when the certificate matches the true instance; against the oracle
    the certificate describes the seen matrix, not the revealed one, so the
    claimed radius ends up refuted.  Only supports the g_inv target.
    """

    def __init__(
        self,
        dims: tuple[int, int],
        precision: int,
        rank_claim: int = 1,
        lambda_claim: Fraction = Fraction(1),
    ) -> None:
        super().__init__("g_inv", dims, precision)
        self.cert = Certificate(rank_claim, lambda_claim)
        self.spec = (
            f"certified-claim@{precision}:{rank_claim}:{format_rational(lambda_claim)}"
        )

    def _commit(self, A_seen: QMatrix) -> Commit:
        ball, _ = pinv_certified(A_seen, self.cert, self.precision, validate=False)
        return Commit(ball.center, claimed_radius=ball.radius)


def bundled_algorithm(spec: str, target: str, dims: tuple[int, int]) -> QueryAlgorithm:
    """Construct a bundled algorithm from its spec string.

    Specs: "round-exact@K", "heuristic@K:tol:max_iter", "constant",
    "certified-claim@K:rank:lambda".
    """
    if spec == "constant":
        return ConstantAlgorithm(target, dims)
    name, _, params = spec.partition("@")
    try:
        if name == "round-exact":
            return RoundedExactAlgorithm(target, dims, int(params))
        if name == "heuristic":
            k, tol, max_iter = params.split(":")
            return HeuristicIterationAlgorithm(
                target, dims, int(k), parse_rational(tol), int(max_iter)
            )
        if name == "certified-claim":
            k, rank_claim, lam = params.split(":")
            return CertifiedClaimAlgorithm(dims, int(k), int(rank_claim), parse_rational(lam))
    except (ValueError, TypeError) as exc:
        raise InputError(f"malformed algorithm spec {spec!r}") from exc
    raise InputError(f"unknown algorithm spec {spec!r}")


# -- transcript verification -------------------------------------------------


def parse_transcript_header(text: str) -> dict[str, str]:
    header: dict[str, str] = {}
    for line in text.splitlines():
        key, _, value = line.partition(" ")
        if key in ("TARGET", "ALG", "BUDGET", "DIMS", "FLOOR"):
            header[key] = value
    missing = {"TARGET", "ALG", "BUDGET", "DIMS", "FLOOR"} - set(header)
    if missing:
        raise InputError(f"transcript missing header lines: {sorted(missing)}")
    return header


def verify_transcript(text: str) -> tuple[bool, str]:
    """Replay a transcript and check it byte for byte, plus consistency.

    Returns (ok, detail).  Replay is possible because only deterministic
    bundled algorithms produce transcripts.
    """
    header = parse_transcript_header(text)
    try:
        dims_parts = header["DIMS"].split()
        dims = (int(dims_parts[0]), int(dims_parts[1]))
        budget = int(header["BUDGET"])
        floor = int(header["FLOOR"])
    except (ValueError, IndexError) as exc:
        raise InputError("malformed transcript header") from exc
    target = header["TARGET"]
    alg = bundled_algorithm(header["ALG"], target, dims)
    replayed = run_adversary(alg, target, budget, dims, floor)
    if replayed.render() != text:
        return False, "replay diverged from transcript"
    if not replayed.check_consistency():
        return False, "answers inconsistent with revealed instance"
    return True, "replay matches and all answers are consistent"
