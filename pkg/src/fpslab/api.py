"""FastAPI application exposing coefficient queries and verification suites."""

from __future__ import annotations

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from . import __version__, service
from .errors import ConfigError, SeriesLabError
from .schemas import (
    CoeffsRequest, CoeffsResponse, ErrorResponse, ListResponse, VerifyRequest,
    VerifyResponse,
)

app = FastAPI(
    title="fpslab",
    version=__version__,
    description="Exact formal power series laboratory: coefficient queries "
                "and machine-checked identity suites.",
)


@app.exception_handler(ConfigError)
async def _config_error(request, exc: ConfigError):
    return JSONResponse(status_code=422, content={
        "error": str(exc), "kind": type(exc).__name__})


@app.exception_handler(SeriesLabError)
async def _domain_error(request, exc: SeriesLabError):
    return JSONResponse(status_code=400, content={
        "error": str(exc), "kind": type(exc).__name__})


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.get("/list", response_model=ListResponse)
def list_capabilities() -> ListResponse:
    return service.list_capabilities()


@app.post("/coeffs", response_model=CoeffsResponse,
          responses={400: {"model": ErrorResponse},
                     422: {"model": ErrorResponse}})
def coeffs(req: CoeffsRequest) -> CoeffsResponse:
    return service.compute_coeffs(req)


@app.post("/verify", response_model=VerifyResponse,
          responses={400: {"model": ErrorResponse},
                     422: {"model": ErrorResponse}})
def verify(req: VerifyRequest) -> VerifyResponse:
    return service.run_verify(req)
