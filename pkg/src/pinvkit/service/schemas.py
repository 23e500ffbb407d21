"""Request/response models for the HTTP service.

Matrices, vectors and rationals travel as exact text (the same grammar the
files use): "m n" header plus entry rows, and "a/b" scalars.  Nothing on
the wire is ever a float, so requests and responses round-trip exactly.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

TargetName = Literal["g_inv", "g_norm", "psi_lsq", "psi_sol", "psi_norm", "kappa"]


class BallScalarModel(BaseModel):
    center: str
    radius: str
    decimal: str


class BallMatrixModel(BaseModel):
    center: str
    radius: str


class BallVectorModel(BaseModel):
    center: str
    radius: str


class ExactPinvRequest(BaseModel):
    matrix: str


class ExactPinvResponse(BaseModel):
    pinv: str


class CertifiedRequest(BaseModel):
    matrix: str
    rank: int = Field(ge=1)
    lambda_lb: str
    precision: int = Field(ge=1)


class CertifiedPinvResponse(BaseModel):
    ball: BallMatrixModel
    trace: list[str]
    certificate_flag: Optional[str] = None


class HeuristicPinvRequest(BaseModel):
    matrix: str
    tol: str
    max_iter: int = Field(ge=1)


class HeuristicPinvResponse(BaseModel):
    result: str
    reason: str
    iterations: int
    last_step_sq: Optional[str] = None


class LsqExactRequest(BaseModel):
    matrix: str
    vector: str


class LsqExactResponse(BaseModel):
    xhat: str
    residual_sq: str


class LsqCertifiedRequest(CertifiedRequest):
    vector: str


class LsqCertifiedResponse(BaseModel):
    solution: BallVectorModel
    optimum: BallScalarModel
    solution_norm: BallScalarModel


class ScalarExactRequest(BaseModel):
    matrix: str


class CondExactResponse(BaseModel):
    cond_sq: str


class GnormExactResponse(BaseModel):
    gnorm_sq: str


class ScalarCertifiedResponse(BaseModel):
    value: BallScalarModel


class FamilyRequest(BaseModel):
    m: int = Field(ge=2)
    n: int = Field(ge=2)
    eps: str


class FamilyResponse(BaseModel):
    matrix: str
    vector: str
    pinv: str
    xhat: str
    g_norm_sq: str
    psi_lsq_sq: str
    psi_norm_sq: str
    kappa_sq: str


class GapsRequest(BaseModel):
    n_max: int = Field(ge=1)
    function: Optional[TargetName] = None


class GapRowModel(BaseModel):
    n: int
    values: dict[str, str]
    lower_bounds: dict[str, str]


class GapsResponse(BaseModel):
    rows: list[GapRowModel]
    separation_ok: bool


class AdversaryRequest(BaseModel):
    target: TargetName
    algorithm: str
    budget: int = Field(ge=0)
    m: int = Field(default=3, ge=2)
    n: int = Field(default=2, ge=2)
    reveal_floor: int = Field(default=0, ge=0)


class AdversaryResponse(BaseModel):
    transcript: str
    revealed_eps: str
    achieved_error: Optional[str] = None
    achieved_error_sq: Optional[str] = None
    claimed_radius: Optional[str] = None
    consistent: bool
    non_terminating: bool
    queries: int


class VerifyTranscriptRequest(BaseModel):
    transcript: str


class VerifyTranscriptResponse(BaseModel):
    verdict: Literal["CONSISTENT", "INCONSISTENT"]
    detail: str


class TraceResponse(BaseModel):
    lines: list[str]
