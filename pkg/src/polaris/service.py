"""HTTP service exposing the analysis pipeline.

Stateless wrapper around the core package: every endpoint takes the graph
document text in the request body, so the service never touches the client
filesystem. Error responses carry a structured ``kind`` ("parse",
"validation" or "internal") that clients map to exit codes.
"""

from __future__ import annotations

from typing import Any, Literal

from fastapi import FastAPI, HTTPException, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import __version__
from .cycles import CrossCheckError
from .fixtures import FIXTURES, fixture_text
from .fuzz import first_failure, fuzz_sweep, run_graph_checks, shrink
from .graph import ParseError, graph_to_text, parse_graph, validate_minimal
from .limittree import ReconstructError
from .realize import TruncationError
from .report import analyze_graph, export_dot

app = FastAPI(
    title="polaris",
    version=__version__,
    description=(
        "Equisingularity data of generic polar curves of minimal "
        "normal-surface singularities, computed in exact arithmetic."
    ),
)


class AnalyzeRequest(BaseModel):
    graph: str = Field(description="graph document in the line-oriented format")
    realize: bool = Field(default=True, description="include the plane-curve model")
    limit_trees: Literal["one", "all"] = Field(default="one")


class AnalyzeResponse(BaseModel):
    report: dict[str, Any]


class CheckRequest(BaseModel):
    graph: str


class CheckItem(BaseModel):
    name: str
    ok: bool
    detail: str = ""


class CheckResponse(BaseModel):
    passed: bool
    checks: list[CheckItem]
    reproducer: str | None = None


class FuzzRequest(BaseModel):
    seed: int = 42
    count: int = Field(default=200, ge=1)
    size: int = Field(default=12, ge=1)


class FuzzFailureInfo(BaseModel):
    case_index: int
    seed: int
    check: str
    detail: str
    graph: str
    reproducer: str


class FuzzResponse(BaseModel):
    passed: bool
    cases: int
    reduced_seen: int
    nonreduced_seen: int
    failure: FuzzFailureInfo | None = None


class ExportRequest(BaseModel):
    graph: str
    what: Literal["graph", "limit-tree", "scott"]


class ExportResponse(BaseModel):
    dot: str


class FixtureInfo(BaseModel):
    name: str
    description: str
    graph: str


class FixturesResponse(BaseModel):
    fixtures: list[FixtureInfo]


def _parse_and_validate(text: str):
    try:
        g = parse_graph(text)
    except ParseError as exc:
        raise HTTPException(
            status_code=422,
            detail={"kind": "parse", "message": str(exc), "line": exc.line, "token": exc.token},
        )
    violations = validate_minimal(g)
    if violations:
        raise HTTPException(
            status_code=422,
            detail={"kind": "validation", "message": "graph is not minimal", "violations": violations},
        )
    return g


@app.exception_handler(CrossCheckError)
@app.exception_handler(ReconstructError)
@app.exception_handler(TruncationError)
async def _internal_error_handler(request: Request, exc: Exception):
    return JSONResponse(
        status_code=500,
        content={"detail": {"kind": "internal", "message": f"{type(exc).__name__}: {exc}"}},
    )


@app.get("/health")
def health() -> dict[str, str]:
    return {"status": "ok", "version": __version__}


@app.post("/analyze", response_model=AnalyzeResponse)
def analyze(req: AnalyzeRequest) -> AnalyzeResponse:
    g = _parse_and_validate(req.graph)
    report = analyze_graph(g, realize_model=req.realize, limit_trees=req.limit_trees)
    return AnalyzeResponse(report=report)


@app.post("/check", response_model=CheckResponse)
def check(req: CheckRequest) -> CheckResponse:
    g = _parse_and_validate(req.graph)
    results = run_graph_checks(g)
    items = [CheckItem(name=r.name, ok=r.ok, detail=r.detail) for r in results]
    failure = first_failure(results)
    reproducer = None
    if failure is not None:
        reproducer = graph_to_text(shrink(g, failure.name))
    return CheckResponse(
        passed=failure is None, checks=items, reproducer=reproducer
    )


@app.post("/fuzz", response_model=FuzzResponse)
def fuzz(req: FuzzRequest) -> FuzzResponse:
    summary = fuzz_sweep(req.seed, req.count, req.size)
    failure = None
    if summary.failure is not None:
        f = summary.failure
        failure = FuzzFailureInfo(
            case_index=f.case_index,
            seed=f.seed,
            check=f.check,
            detail=f.detail,
            graph=f.graph_text,
            reproducer=f.reproducer_text,
        )
    return FuzzResponse(
        passed=summary.passed,
        cases=summary.cases,
        reduced_seen=summary.reduced_seen,
        nonreduced_seen=summary.nonreduced_seen,
        failure=failure,
    )


@app.post("/export", response_model=ExportResponse)
def export(req: ExportRequest) -> ExportResponse:
    g = _parse_and_validate(req.graph)
    return ExportResponse(dot=export_dot(g, req.what))


@app.get("/fixtures", response_model=FixturesResponse)
def fixtures() -> FixturesResponse:
    return FixturesResponse(
        fixtures=[
            FixtureInfo(name=name, description=FIXTURES[name][0], graph=fixture_text(name))
            for name in sorted(FIXTURES)
        ]
    )
