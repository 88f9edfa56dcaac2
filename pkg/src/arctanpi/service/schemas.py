"""Request/response models for the HTTP surface.

Numeric payloads travel as decimal strings rendered at the requested digit
count (never as JSON floats), so precision survives the wire and CSV files
round-trip byte for byte.  Rational arguments use ``p/q`` literals.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field


class PiRequest(BaseModel):
    method: str = "direct"  # direct | asym | formula:<name>
    L: int = Field(default=100, ge=1)
    x: Optional[str] = None  # rational p/q; required iff method == "asym"
    digits: int = Field(default=30, ge=1, le=2000)


class PiResponse(BaseModel):
    method: str
    parameters: dict
    value: str
    digits_coinciding: int
    elapsed_ms: float


class ArctanRequest(BaseModel):
    x: str = "1"  # rational p/q or decimal literal
    L: int = Field(default=100, ge=1)
    digits: int = Field(default=30, ge=1, le=2000)


class ArctanResponse(BaseModel):
    method: str
    parameters: dict
    value: str
    reference: str
    abs_error: str
    elapsed_ms: float


class ErfRequest(BaseModel):
    x: str = "1"
    L: int = Field(default=100, ge=1)
    digits: int = Field(default=30, ge=1, le=2000)


class ErfResponse(BaseModel):
    method: str
    parameters: dict
    value: str
    reference: str
    abs_error: str
    elapsed_ms: float


class SincRequest(BaseModel):
    x: float = 1.0
    L: int = Field(default=100, ge=1)
    rule: Literal["midpoint", "trapezoid", "simpson", "all"] = "all"


class SincResponse(BaseModel):
    method: str
    parameters: dict
    values: dict[str, float]
    reference: float
    abs_errors: dict[str, float]
    elapsed_ms: float


class FigureRequest(BaseModel):
    which: Literal[1, 2]
    L_list: Optional[list[int]] = None  # defaults depend on the figure
    points: int = Field(default=401, ge=2)
    digits: int = Field(default=30, ge=1, le=200)
    x_min: Optional[float] = None
    x_max: Optional[float] = None


class FigureResponse(BaseModel):
    figure: int
    parameters: dict
    columns: list[str]
    rows: list[list[str]]
    elapsed_ms: float


class ConvergeRequest(BaseModel):
    x: str = "1"
    Ls: list[int] = Field(default=[100, 1000, 10000], min_length=1)
    digits: int = Field(default=50, ge=1, le=2000)


class ConvergenceRow(BaseModel):
    L: int
    x: str
    value: str
    coinciding: int
    abs_error: str


class ConvergeResponse(BaseModel):
    method: str
    parameters: dict
    records: list[ConvergenceRow]
    orders: list[float]
    elapsed_ms: float


class ScanRequest(BaseModel):
    L: int = Field(default=10000, ge=1)
    xs: list[str] = Field(min_length=2)
    digits: int = Field(default=50, ge=1, le=2000)


class ScanResponse(BaseModel):
    method: str
    parameters: dict
    best_x: str
    records: list[ConvergenceRow]
    elapsed_ms: float


class FormulaInfo(BaseModel):
    name: str
    terms: list[list[str]]  # [coefficient, argument] as rational strings
    verified: bool


class FormulasResponse(BaseModel):
    formulas: list[FormulaInfo]


class VerifyRequest(BaseModel):
    digits: int = Field(default=50, ge=10, le=2000)


class VerifyResult(BaseModel):
    name: str
    ok: bool


class VerifyResponse(BaseModel):
    method: str
    parameters: dict
    results: list[VerifyResult]
    all_ok: bool
    elapsed_ms: float


class BenchRequest(BaseModel):
    L: int = Field(default=10**6, ge=1)
    kernel: Literal["sequential", "compensated", "pairwise"] = "pairwise"
    chunk: int = Field(default=1 << 20, ge=1)
    threads: int = Field(default=1, ge=1)


class BenchResponse(BaseModel):
    method: str
    parameters: dict
    value: float
    value_hex: str
    elapsed_ms: float
    terms_per_sec: float
    validation_L: int
    validation_exact: str
    deviation: str
    deviation_ulps: float
    deterministic: Optional[bool]


class HealthResponse(BaseModel):
    status: str
    version: str
