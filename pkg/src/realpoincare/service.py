"""FastAPI service wrapping the pipeline.

    uvicorn realpoincare.service:app

Endpoints mirror the CLI subcommands; branches are sent inline as text.
Parse and domain errors map to 400 with a structured detail, resource
caps to 413, internal invariant violations to 500.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from . import __version__
from .corpus import corpus_expected, corpus_names, corpus_text
from .errors import ParseError, ResourceError, ValidationError
from .pipeline import (
    analysis_report,
    analyze_text,
    conjugate_report,
    run_verification,
    series_report,
)
from .schemas import (
    AnalyzeResponse,
    BranchRequest,
    ConjugateResponse,
    CorpusEntry,
    SeriesRequest,
    SeriesResponse,
    VerifyRequest,
    VerifyResponse,
)

app = FastAPI(
    title="realpoincare",
    version=__version__,
    description=(
        "Real resolution data, the real semigroup of values and the three "
        "Poincare series of a plane curve branch x = t^n, y(t) over Q(i)."
    ),
)


def _analyze_or_raise(source: str):
    try:
        return analyze_text(source)
    except ParseError as exc:
        raise HTTPException(
            status_code=400,
            detail={
                "code": "parse",
                "message": str(exc),
                "line": exc.line,
                "column": exc.column,
            },
        )
    except ValidationError as exc:
        raise HTTPException(status_code=400, detail={"code": "validation", "message": str(exc)})


@app.get("/")
def root() -> dict:
    return {
        "service": "realpoincare",
        "version": __version__,
        "endpoints": ["/analyze", "/series", "/verify", "/conjugate", "/corpus"],
    }


@app.post("/analyze", response_model=AnalyzeResponse)
def analyze(request: BranchRequest):
    analysis = _analyze_or_raise(request.source)
    return analysis_report(analysis)


@app.post("/series", response_model=SeriesResponse)
def series(request: SeriesRequest):
    analysis = _analyze_or_raise(request.source)
    try:
        return series_report(analysis, which=request.which, order=request.order)
    except ValidationError as exc:
        raise HTTPException(status_code=400, detail={"code": "validation", "message": str(exc)})


@app.post("/verify", response_model=VerifyResponse)
def verify(request: VerifyRequest):
    analysis = _analyze_or_raise(request.source)
    try:
        report = run_verification(
            analysis,
            max_order=request.max_order,
            size_cap=request.size_cap,
            expected=request.expected,
        )
    except ResourceError as exc:
        raise HTTPException(status_code=413, detail={"code": "resource", "message": str(exc)})
    return report.as_json()


@app.post("/conjugate", response_model=ConjugateResponse)
def conjugate(request: BranchRequest):
    analysis = _analyze_or_raise(request.source)
    try:
        return conjugate_report(analysis)
    except ValidationError as exc:
        raise HTTPException(status_code=400, detail={"code": "validation", "message": str(exc)})


@app.get("/corpus", response_model=list[CorpusEntry])
def corpus():
    return [
        CorpusEntry(name=name, source=corpus_text(name), expected=corpus_expected(name))
        for name in corpus_names()
    ]
