"""Pure request -> response functions behind the HTTP routes.

These raise the package's own exceptions; the ASGI app translates them to
status codes and the CLI translates them to exit codes.
"""

from __future__ import annotations

from .. import adversary as adv
from .. import creal, family
from ..ball import BallMatrix, BallScalar, BallVector
from ..exact import (
    cond_sq_exact,
    format_rational,
    frob_norm_sq,
    lsq_exact,
    parse_matrix,
    parse_rational,
    parse_vector,
    pinv_exact,
)
from ..iteration import (
    Certificate,
    derived_certified,
    pinv_certified,
    pinv_heuristic,
)
from . import schemas as S


def _ball_scalar_model(ball: BallScalar) -> S.BallScalarModel:
    return S.BallScalarModel(
        center=format_rational(ball.center),
        radius=format_rational(ball.radius),
        decimal=creal.decimal_string(ball.center, ball.radius),
    )


def _ball_matrix_model(ball: BallMatrix) -> S.BallMatrixModel:
    return S.BallMatrixModel(
        center=ball.center.to_text(), radius=format_rational(ball.radius)
    )


def _ball_vector_model(ball: BallVector) -> S.BallVectorModel:
    return S.BallVectorModel(
        center=ball.center.to_text(), radius=format_rational(ball.radius)
    )


def _certificate(req: S.CertifiedRequest) -> Certificate:
    return Certificate(req.rank, parse_rational(req.lambda_lb))


def pinv_exact_handler(req: S.ExactPinvRequest) -> S.ExactPinvResponse:
    A = parse_matrix(req.matrix)
    return S.ExactPinvResponse(pinv=pinv_exact(A).to_text())


def pinv_certified_handler(req: S.CertifiedRequest) -> S.CertifiedPinvResponse:
    A = parse_matrix(req.matrix)
    ball, trace = pinv_certified(A, _certificate(req), req.precision)
    return S.CertifiedPinvResponse(
        ball=_ball_matrix_model(ball),
        trace=trace.render_lines(),
        certificate_flag=trace.certificate_flag,
    )


def pinv_heuristic_handler(req: S.HeuristicPinvRequest) -> S.HeuristicPinvResponse:
    A = parse_matrix(req.matrix)
    X, diag = pinv_heuristic(A, parse_rational(req.tol), req.max_iter)
    return S.HeuristicPinvResponse(
        result=X.to_text(),
        reason=diag.reason,
        iterations=diag.iterations,
        last_step_sq=None if diag.last_step_sq is None else format_rational(diag.last_step_sq),
    )


def lsq_exact_handler(req: S.LsqExactRequest) -> S.LsqExactResponse:
    A = parse_matrix(req.matrix)
    b = parse_vector(req.vector)
    xhat, residual_sq = lsq_exact(A, b)
    return S.LsqExactResponse(xhat=xhat.to_text(), residual_sq=format_rational(residual_sq))


def lsq_certified_handler(req: S.LsqCertifiedRequest) -> S.LsqCertifiedResponse:
    A = parse_matrix(req.matrix)
    b = parse_vector(req.vector)
    cert = _certificate(req)
    solution = derived_certified("psi_sol", A, cert, req.precision, b)
    optimum = derived_certified("psi_lsq", A, cert, req.precision, b)
    norm = derived_certified("psi_norm", A, cert, req.precision, b)
    assert isinstance(solution, BallVector)
    assert isinstance(optimum, BallScalar)
    assert isinstance(norm, BallScalar)
    return S.LsqCertifiedResponse(
        solution=_ball_vector_model(solution),
        optimum=_ball_scalar_model(optimum),
        solution_norm=_ball_scalar_model(norm),
    )


def cond_exact_handler(req: S.ScalarExactRequest) -> S.CondExactResponse:
    A = parse_matrix(req.matrix)
    return S.CondExactResponse(cond_sq=format_rational(cond_sq_exact(A)))


def cond_certified_handler(req: S.CertifiedRequest) -> S.ScalarCertifiedResponse:
    A = parse_matrix(req.matrix)
    value = derived_certified("kappa", A, _certificate(req), req.precision)
    assert isinstance(value, BallScalar)
    return S.ScalarCertifiedResponse(value=_ball_scalar_model(value))


def gnorm_exact_handler(req: S.ScalarExactRequest) -> S.GnormExactResponse:
    A = parse_matrix(req.matrix)
    return S.GnormExactResponse(gnorm_sq=format_rational(frob_norm_sq(pinv_exact(A))))


def gnorm_certified_handler(req: S.CertifiedRequest) -> S.ScalarCertifiedResponse:
    A = parse_matrix(req.matrix)
    value = derived_certified("g_norm", A, _certificate(req), req.precision)
    assert isinstance(value, BallScalar)
    return S.ScalarCertifiedResponse(value=_ball_scalar_model(value))


def family_handler(req: S.FamilyRequest) -> S.FamilyResponse:
    pt = family.make_family_point(req.m, req.n, parse_rational(req.eps))
    cf = family.closed_forms(pt)
    return S.FamilyResponse(
        matrix=pt.A.to_text(),
        vector=pt.b.to_text(),
        pinv=cf.pinv.to_text(),
        xhat=cf.xhat.to_text(),
        g_norm_sq=format_rational(cf.g_norm_sq),
        psi_lsq_sq=format_rational(cf.psi_lsq_sq),
        psi_norm_sq=format_rational(cf.psi_norm_sq),
        kappa_sq=format_rational(cf.kappa_sq),
    )


def gaps_handler(req: S.GapsRequest) -> S.GapsResponse:
    names = family.FUNCTION_NAMES if req.function is None else (req.function,)
    rows = []
    for row in family.gap_table(req.n_max):
        rows.append(
            S.GapRowModel(
                n=row.n,
                values={name: row.gaps[name].render() for name in names},
                lower_bounds={
                    name: format_rational(row.gaps[name].lower_bound()) for name in names
                },
            )
        )
    return S.GapsResponse(
        rows=rows, separation_ok=family.separation_check(req.n_max, tuple(names))
    )


def adversary_handler(req: S.AdversaryRequest) -> S.AdversaryResponse:
    dims = (req.m, req.n)
    alg = adv.bundled_algorithm(req.algorithm, req.target, dims)
    transcript = adv.run_adversary(alg, req.target, req.budget, dims, req.reveal_floor)
    assert transcript.revealed is not None
    return S.AdversaryResponse(
        transcript=transcript.render(),
        revealed_eps=format_rational(transcript.revealed.eps),
        achieved_error=(
            None
            if transcript.achieved_error is None
            else format_rational(transcript.achieved_error)
        ),
        achieved_error_sq=(
            None
            if transcript.achieved_error_sq is None
            else format_rational(transcript.achieved_error_sq)
        ),
        claimed_radius=(
            None
            if transcript.claimed_radius is None
            else format_rational(transcript.claimed_radius)
        ),
        consistent=transcript.check_consistency(),
        non_terminating=transcript.non_terminating,
        queries=len(transcript.queries),
    )


def verify_transcript_handler(req: S.VerifyTranscriptRequest) -> S.VerifyTranscriptResponse:
    ok, detail = adv.verify_transcript(req.transcript)
    return S.VerifyTranscriptResponse(
        verdict="CONSISTENT" if ok else "INCONSISTENT", detail=detail
    )


def trace_handler(req: S.CertifiedRequest) -> S.TraceResponse:
    A = parse_matrix(req.matrix)
    _, trace = pinv_certified(A, _certificate(req), req.precision)
    return S.TraceResponse(lines=trace.render_lines())
