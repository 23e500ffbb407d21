"""ASGI application exposing the toolkit.

Error mapping: malformed input (bad grammar, bad shapes) -> 400 with
kind "input"; violated operation preconditions (zero matrix, refuted or
missing certificate/witness) -> 409 with kind "precondition".  Schema
violations surface as FastAPI's usual 422.

Run with: uvicorn pinvkit.service.app:app
"""

from __future__ import annotations

from typing import Callable, TypeVar

from fastapi import FastAPI, HTTPException

from ..errors import InputError, PreconditionError
from . import handlers as H
from . import schemas as S

app = FastAPI(
    title="pinvkit",
    description=(
        "Exact and certified pseudoinverse computation over the rationals, "
        "plus the lower-bound adversary games."
    ),
    version="0.1.0",
)

T = TypeVar("T")


def _run(fn: Callable[..., T], *args) -> T:
    try:
        return fn(*args)
    except InputError as exc:
        raise HTTPException(status_code=400, detail={"kind": "input", "message": str(exc)})
    except PreconditionError as exc:
        raise HTTPException(
            status_code=409, detail={"kind": "precondition", "message": str(exc)}
        )


@app.post("/v1/pinv/exact", response_model=S.ExactPinvResponse)
def pinv_exact_route(req: S.ExactPinvRequest) -> S.ExactPinvResponse:
    return _run(H.pinv_exact_handler, req)


@app.post("/v1/pinv/certified", response_model=S.CertifiedPinvResponse)
def pinv_certified_route(req: S.CertifiedRequest) -> S.CertifiedPinvResponse:
    return _run(H.pinv_certified_handler, req)


@app.post("/v1/pinv/heuristic", response_model=S.HeuristicPinvResponse)
def pinv_heuristic_route(req: S.HeuristicPinvRequest) -> S.HeuristicPinvResponse:
    return _run(H.pinv_heuristic_handler, req)


@app.post("/v1/lsq/exact", response_model=S.LsqExactResponse)
def lsq_exact_route(req: S.LsqExactRequest) -> S.LsqExactResponse:
    return _run(H.lsq_exact_handler, req)


@app.post("/v1/lsq/certified", response_model=S.LsqCertifiedResponse)
def lsq_certified_route(req: S.LsqCertifiedRequest) -> S.LsqCertifiedResponse:
    return _run(H.lsq_certified_handler, req)


@app.post("/v1/cond/exact", response_model=S.CondExactResponse)
def cond_exact_route(req: S.ScalarExactRequest) -> S.CondExactResponse:
    return _run(H.cond_exact_handler, req)


@app.post("/v1/cond/certified", response_model=S.ScalarCertifiedResponse)
def cond_certified_route(req: S.CertifiedRequest) -> S.ScalarCertifiedResponse:
    return _run(H.cond_certified_handler, req)


@app.post("/v1/gnorm/exact", response_model=S.GnormExactResponse)
def gnorm_exact_route(req: S.ScalarExactRequest) -> S.GnormExactResponse:
    return _run(H.gnorm_exact_handler, req)


@app.post("/v1/gnorm/certified", response_model=S.ScalarCertifiedResponse)
def gnorm_certified_route(req: S.CertifiedRequest) -> S.ScalarCertifiedResponse:
    return _run(H.gnorm_certified_handler, req)


@app.post("/v1/family", response_model=S.FamilyResponse)
def family_route(req: S.FamilyRequest) -> S.FamilyResponse:
    return _run(H.family_handler, req)


@app.post("/v1/gaps", response_model=S.GapsResponse)
def gaps_route(req: S.GapsRequest) -> S.GapsResponse:
    return _run(H.gaps_handler, req)


@app.post("/v1/adversary/run", response_model=S.AdversaryResponse)
def adversary_route(req: S.AdversaryRequest) -> S.AdversaryResponse:
    return _run(H.adversary_handler, req)


@app.post("/v1/adversary/verify", response_model=S.VerifyTranscriptResponse)
def verify_route(req: S.VerifyTranscriptRequest) -> S.VerifyTranscriptResponse:
    return _run(H.verify_transcript_handler, req)


@app.post("/v1/trace", response_model=S.TraceResponse)
def trace_route(req: S.CertifiedRequest) -> S.TraceResponse:
    return _run(H.trace_handler, req)
