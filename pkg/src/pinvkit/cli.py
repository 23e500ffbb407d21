"""Command-line client for the service layer.

Every command builds the same request model the HTTP API accepts, invokes
the corresponding handler in process, and renders the response as a
stable, diff-friendly text report.  Rationals print as "a/b"; enclosures
print as "center ± radius" and any decimal rendering carries an explicit
"± 2^-N" annotation.  Floating-point input is rejected everywhere: a float
would silently pin the problem to the float's exact rational value, hiding
precisely the representation questions this toolkit is about.

Exit codes: 0 success, 2 input error, 3 certificate/precondition failure.
"""

from __future__ import annotations

import sys
from fractions import Fraction
from typing import Callable

import click
from pydantic import ValidationError

from .errors import InputError, PreconditionError
from .service import handlers as H
from .service import schemas as S

EXIT_INPUT = 2
EXIT_PRECONDITION = 3

CERT_MISSING_MESSAGE = (
    "certified mode needs --rank and --lambda-lb: no algorithm can derive a "
    "universally valid rank or spectral lower bound from the matrix alone, so "
    "the certificate must be supplied by the caller"
)


def _fail(code: int, message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _emit(report: str, out: str | None) -> None:
    if out is not None:
        with open(out, "w") as fh:
            fh.write(report)
    click.echo(report, nl=False)


def _guarded(fn: Callable[[], None]) -> None:
    try:
        fn()
    except InputError as exc:
        _fail(EXIT_INPUT, str(exc))
    except PreconditionError as exc:
        _fail(EXIT_PRECONDITION, str(exc))
    except ValidationError as exc:
        _fail(EXIT_INPUT, str(exc))
    except OSError as exc:
        _fail(EXIT_INPUT, str(exc))


def _read_file(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        _fail(EXIT_INPUT, f"cannot read {path}: {exc}")
        raise AssertionError  # unreachable


def _require_certificate(rank: int | None, lambda_lb: str | None) -> None:
    if rank is None or lambda_lb is None:
        _fail(EXIT_PRECONDITION, CERT_MISSING_MESSAGE)
    if rank < 1:
        _fail(EXIT_PRECONDITION, "certificate rank must be at least 1")


def _ball_scalar_report(name: str, model: S.BallScalarModel) -> list[str]:
    return [
        f"{name}: {model.center} ± {model.radius}",
        f"{name} decimal: {model.decimal}",
    ]


@click.group()
def main() -> None:
    """Exact and certified pseudoinverse toolkit."""


matrix_option = click.option(
    "--matrix", "matrix_path", required=True, type=click.Path(), help="matrix file"
)
vector_option = click.option(
    "--vector", "vector_path", type=click.Path(), default=None, help="vector file (m x 1)"
)
precision_option = click.option(
    "--precision", type=click.IntRange(min=1), default=None, help="target precision N (2^-N)"
)
rank_option = click.option("--rank", type=int, default=None, help="certified rank p")
lambda_option = click.option(
    "--lambda-lb", "lambda_lb", default=None, help="rational lower bound on lambda_p(A^H A)"
)
out_option = click.option("--out", type=click.Path(), default=None, help="also write the report here")


@main.command("pinv")
@matrix_option
@click.option(
    "--mode",
    type=click.Choice(["exact", "certified", "heuristic"]),
    default="exact",
    show_default=True,
)
@precision_option
@rank_option
@lambda_option
@click.option(
    "--budget",
    type=click.IntRange(min=1),
    default=100,
    show_default=True,
    help="iteration cap for heuristic mode",
)
@out_option
def pinv_cmd(
    matrix_path: str,
    mode: str,
    precision: int | None,
    rank: int | None,
    lambda_lb: str | None,
    budget: int,
    out: str | None,
) -> None:
    """Pseudoinverse of a matrix (exact, certified, or heuristic)."""
    matrix_text = _read_file(matrix_path)

    def body() -> None:
        if mode == "exact":
            resp = H.pinv_exact_handler(S.ExactPinvRequest(matrix=matrix_text))
            _emit(f"pinv (exact):\n{resp.pinv}", out)
            return
        if mode == "certified":
            _require_certificate(rank, lambda_lb)
            n = precision if precision is not None else 30
            resp = H.pinv_certified_handler(
                S.CertifiedRequest(
                    matrix=matrix_text, rank=rank, lambda_lb=lambda_lb, precision=n
                )
            )
            lines = [f"pinv (certified, N={n}):", "center:", resp.ball.center.rstrip("\n")]
            lines.append(f"radius: {resp.ball.radius}")
            if resp.certificate_flag:
                lines.append(f"warning: {resp.certificate_flag}")
            _emit("\n".join(lines) + "\n", out)
            return
        # Heuristic mode: --precision N sets the step tolerance 2^-N and
        # --budget caps the iterations.  No correctness guarantee exists for
        # this mode; certified mode is the one with error control.
        n = precision if precision is not None else 30
        tol = Fraction(1, 1 << n)
        resp = H.pinv_heuristic_handler(
            S.HeuristicPinvRequest(
                matrix=matrix_text, tol=f"{tol.numerator}/{tol.denominator}", max_iter=budget
            )
        )
        report = (
            f"pinv (heuristic, tol=2^-{n}, max_iter={budget}):\n"
            f"{resp.result}"
            f"stopping: {resp.reason} after {resp.iterations} iterations\n"
            f"last_step_sq: {resp.last_step_sq}\n"
            "note: heuristic output carries no error guarantee\n"
        )
        _emit(report, out)

    _guarded(body)


@main.command("lsq")
@matrix_option
@click.option("--vector", "vector_path", required=True, type=click.Path(), help="right-hand side")
@click.option(
    "--mode", type=click.Choice(["exact", "certified"]), default="exact", show_default=True
)
@precision_option
@rank_option
@lambda_option
@out_option
def lsq_cmd(
    matrix_path: str,
    vector_path: str,
    mode: str,
    precision: int | None,
    rank: int | None,
    lambda_lb: str | None,
    out: str | None,
) -> None:
    """Minimum-norm least-squares solution and residual."""
    matrix_text = _read_file(matrix_path)
    vector_text = _read_file(vector_path)

    def body() -> None:
        if mode == "exact":
            resp = H.lsq_exact_handler(
                S.LsqExactRequest(matrix=matrix_text, vector=vector_text)
            )
            _emit(f"xhat (exact):\n{resp.xhat}residual_sq: {resp.residual_sq}\n", out)
            return
        _require_certificate(rank, lambda_lb)
        n = precision if precision is not None else 30
        resp = H.lsq_certified_handler(
            S.LsqCertifiedRequest(
                matrix=matrix_text,
                vector=vector_text,
                rank=rank,
                lambda_lb=lambda_lb,
                precision=n,
            )
        )
        lines = [f"lsq (certified, N={n}):", "solution center:", resp.solution.center.rstrip("\n")]
        lines.append(f"solution radius: {resp.solution.radius}")
        lines.extend(_ball_scalar_report("optimum", resp.optimum))
        lines.extend(_ball_scalar_report("solution_norm", resp.solution_norm))
        _emit("\n".join(lines) + "\n", out)

    _guarded(body)


def _scalar_command(
    name: str,
    exact_handler,
    certified_handler,
    exact_field: str,
    certified_label: str,
    help_text: str,
):
    @main.command(name, help=help_text)
    @matrix_option
    @click.option(
        "--mode", type=click.Choice(["exact", "certified"]), default="exact", show_default=True
    )
    @precision_option
    @rank_option
    @lambda_option
    @out_option
    def cmd(
        matrix_path: str,
        mode: str,
        precision: int | None,
        rank: int | None,
        lambda_lb: str | None,
        out: str | None,
    ) -> None:
        matrix_text = _read_file(matrix_path)

        def body() -> None:
            if mode == "exact":
                resp = exact_handler(S.ScalarExactRequest(matrix=matrix_text))
                _emit(f"{exact_field}: {getattr(resp, exact_field)}\n", out)
                return
            _require_certificate(rank, lambda_lb)
            n = precision if precision is not None else 30
            resp = certified_handler(
                S.CertifiedRequest(
                    matrix=matrix_text, rank=rank, lambda_lb=lambda_lb, precision=n
                )
            )
            _emit("\n".join(_ball_scalar_report(certified_label, resp.value)) + "\n", out)

        _guarded(body)

    return cmd


cond_cmd = _scalar_command(
    "cond",
    H.cond_exact_handler,
    H.cond_certified_handler,
    "cond_sq",
    "kappa",
    "Frobenius condition number (squared when exact).",
)

gnorm_cmd = _scalar_command(
    "gnorm",
    H.gnorm_exact_handler,
    H.gnorm_certified_handler,
    "gnorm_sq",
    "gnorm",
    "Frobenius norm of the pseudoinverse (squared when exact).",
)


@main.command("family")
@click.option("--dims", nargs=2, type=int, required=True, metavar="M N")
@click.option("--eps", required=True, help="perturbation scale, exact rational a/b")
@click.option("--out", type=click.Path(), default=None, help="write the matrix file here")
@click.option("--vector", "vector_out", type=click.Path(), default=None, help="write b here")
def family_cmd(dims: tuple[int, int], eps: str, out: str | None, vector_out: str | None) -> None:
    """Emit one perturbation-family point and its closed forms."""

    def body() -> None:
        m, n = dims
        resp = H.family_handler(S.FamilyRequest(m=m, n=n, eps=eps))
        if out is not None:
            with open(out, "w") as fh:
                fh.write(resp.matrix)
        if vector_out is not None:
            with open(vector_out, "w") as fh:
                fh.write(resp.vector)
        lines = [f"family point m={m} n={n} eps={eps}"]
        lines.append("matrix:")
        lines.append(resp.matrix.rstrip("\n"))
        lines.append("b:")
        lines.append(resp.vector.rstrip("\n"))
        lines.append("pinv:")
        lines.append(resp.pinv.rstrip("\n"))
        lines.append("xhat:")
        lines.append(resp.xhat.rstrip("\n"))
        lines.append(f"g_norm_sq: {resp.g_norm_sq}")
        lines.append(f"psi_lsq_sq: {resp.psi_lsq_sq}")
        lines.append(f"psi_norm_sq: {resp.psi_norm_sq}")
        lines.append(f"kappa_sq: {resp.kappa_sq}")
        if out is not None:
            lines.append(f"wrote matrix to {out}")
        if vector_out is not None:
            lines.append(f"wrote vector to {vector_out}")
        click.echo("\n".join(lines))

    _guarded(body)


@main.command("gaps")
@click.option("--n-max", "n_max", type=int, required=True)
@click.option(
    "--function",
    "function",
    type=click.Choice(list(S.TargetName.__args__)),  # type: ignore[attr-defined]
    default=None,
    help="restrict to one derived quantity",
)
@out_option
def gaps_cmd(n_max: int, function: str | None, out: str | None) -> None:
    """Gaps between the 2^-n family point and the degenerate point."""
    header = "n gap (value at eps=2^-n minus value at eps=0)"
    if n_max < 1:
        click.echo(header)
        sys.exit(EXIT_INPUT)

    def body() -> None:
        resp = H.gaps_handler(S.GapsRequest(n_max=n_max, function=function))
        lines = [header]
        for row in resp.rows:
            for name, value in row.values.items():
                prefix = f"{row.n} {name}: {value}"
                if value.startswith("sqrt"):
                    prefix += f" (>= {row.lower_bounds[name]})"
                lines.append(prefix)
        lines.append(f"separation_ok: {'true' if resp.separation_ok else 'false'}")
        _emit("\n".join(lines) + "\n", out)

    _guarded(body)


@main.command("adversary")
@click.option(
    "--function",
    "target",
    type=click.Choice(list(S.TargetName.__args__)),  # type: ignore[attr-defined]
    required=True,
    help="target quantity the algorithm must answer for",
)
@click.option(
    "--algorithm",
    required=True,
    help='bundled algorithm spec: "round-exact@K", "heuristic@K:tol:max_iter", '
    '"constant", "certified-claim@K:rank:lambda"',
)
@click.option("--budget", type=click.IntRange(min=0), default=64, show_default=True)
@click.option("--dims", nargs=2, type=int, default=(3, 2), show_default=True, metavar="M N")
@click.option(
    "--reveal-floor",
    type=click.IntRange(min=0),
    default=0,
    show_default=True,
    help="force the revealed scale index to be at least this large",
)
@click.option("--out", type=click.Path(), default=None, help="write the transcript here")
def adversary_cmd(
    target: str,
    algorithm: str,
    budget: int,
    dims: tuple[int, int],
    reveal_floor: int,
    out: str | None,
) -> None:
    """Play one oracle game against a bundled deterministic algorithm."""

    def body() -> None:
        m, n = dims
        resp = H.adversary_handler(
            S.AdversaryRequest(
                target=target,
                algorithm=algorithm,
                budget=budget,
                m=m,
                n=n,
                reveal_floor=reveal_floor,
            )
        )
        if out is not None:
            with open(out, "w") as fh:
                fh.write(resp.transcript)
        lines = [resp.transcript.rstrip("\n")]
        lines.append(f"queries: {resp.queries}")
        lines.append(f"consistent: {'true' if resp.consistent else 'false'}")
        if resp.non_terminating:
            lines.append("verdict: non-terminating within budget")
        elif resp.achieved_error is not None:
            lines.append(f"achieved_error: {resp.achieved_error}")
            if resp.claimed_radius is not None:
                lines.append(f"claimed_radius: {resp.claimed_radius}")
        if out is not None:
            lines.append(f"wrote transcript to {out}")
        click.echo("\n".join(lines))

    _guarded(body)


@main.command("trace")
@matrix_option
@rank_option
@lambda_option
@precision_option
@out_option
def trace_cmd(
    matrix_path: str,
    rank: int | None,
    lambda_lb: str | None,
    precision: int | None,
    out: str | None,
) -> None:
    """Certified-iteration convergence trace (bound per step)."""
    matrix_text = _read_file(matrix_path)

    def body() -> None:
        _require_certificate(rank, lambda_lb)
        n = precision if precision is not None else 30
        resp = H.trace_handler(
            S.CertifiedRequest(matrix=matrix_text, rank=rank, lambda_lb=lambda_lb, precision=n)
        )
        _emit("\n".join(resp.lines) + "\n", out)

    _guarded(body)


@main.command("verify-transcript")
@click.argument("transcript_path", type=click.Path())
@out_option
def verify_cmd(transcript_path: str, out: str | None) -> None:
    """Replay an adversary transcript and report CONSISTENT or not."""
    text = _read_file(transcript_path)

    def body() -> None:
        resp = H.verify_transcript_handler(S.VerifyTranscriptRequest(transcript=text))
        _emit(f"{resp.verdict}: {resp.detail}\n", out)
        if resp.verdict != "CONSISTENT":
            sys.exit(EXIT_INPUT)

    _guarded(body)


if __name__ == "__main__":
    main()
