"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

from .oracle import DEFAULT_SIZE_CAP


class BranchRequest(BaseModel):
    """A branch given inline in the input grammar."""

    source: str = Field(description="branch text, e.g. 'n = 4\\ny = i*t^6 + t^7'")


class SeriesRequest(BranchRequest):
    which: Literal["s", "classical", "real", "all"] = "all"
    order: Optional[int] = Field(
        default=None, ge=0, description="expansion order (default c + 2 m_rho + 16)"
    )


class VerifyRequest(BranchRequest):
    max_order: Optional[int] = Field(
        default=None, ge=0, description="verification window (default c + m_rho + 10)"
    )
    size_cap: int = Field(default=DEFAULT_SIZE_CAP, gt=0)
    expected: Optional[dict] = Field(
        default=None, description="fixture of expected invariants to diff against"
    )


class AnalyzeResponse(BaseModel):
    branch: dict
    validation: dict
    reality: dict
    char_exponents: Optional[dict]
    resolution: Optional[dict]
    classification: Optional[dict]
    classical_semigroup: Optional[dict]
    real: Optional[dict]
    real_graph_mirror: Optional[dict]
    multiplicity_column: Optional[list[int]] = None
    degenerate_note: Optional[str] = None


class SeriesResponse(BaseModel):
    PS: Optional[dict]
    P: Optional[dict]
    PR: Optional[dict]
    m_rho: Optional[int]
    factored: dict
    expansion: dict
    note: Optional[str] = None


class VerifyResponse(BaseModel):
    agree: bool
    range: list[int]
    D_used: Optional[int]
    matrix_shape: Optional[list[int]]
    sections: list[dict]
    skipped: dict
    expected_diffs: list[str]
    mismatches: list[str]


class ConjugateResponse(BaseModel):
    b: list[int]
    parametrization: str
    M_sigma: list[int]
    verification: dict


class CorpusEntry(BaseModel):
    name: str
    source: str
    expected: Optional[dict]


class ErrorDetail(BaseModel):
    code: Literal["parse", "validation", "resource", "internal"]
    message: str
    line: Optional[int] = None
    column: Optional[int] = None
