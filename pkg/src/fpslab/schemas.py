"""Pydantic request/response models for the service and the CLI client."""

from __future__ import annotations

from typing import Any, Optional

from pydantic import BaseModel, Field

DEFAULT_COEFFS_ORDER = 16
DEFAULT_VERIFY_ORDER = 12


class CoeffsRequest(BaseModel):
    target: str
    order: int = Field(default=DEFAULT_COEFFS_ORDER, ge=1, le=64)
    params: dict[str, str] = Field(default_factory=dict)
    series: Optional[dict] = None


class CoeffsResponse(BaseModel):
    target: str
    order: int
    result: Any


class VerifyRequest(BaseModel):
    suite: str
    order: int = Field(default=DEFAULT_VERIFY_ORDER, ge=4, le=32)
    parallel: bool = False


class CheckModel(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class VerifyResponse(BaseModel):
    suite: str
    order: int
    passed: bool
    checks: list[CheckModel]


class TargetInfo(BaseModel):
    name: str
    params: list[str]
    needs_series: bool
    description: str


class ListResponse(BaseModel):
    targets: list[TargetInfo]
    suites: list[str]


class ErrorResponse(BaseModel):
    error: str
    kind: str
