"""FastAPI service wrapping the computation core.

Run with ``uvicorn arctanpi.service:app``.  All endpoints are stateless;
responses carry decimal strings rendered at the requested digit count plus
elapsed wall time in milliseconds.  Input errors surface as 400s, numeric
or precision failures as 500s with an explanatory detail.
"""

from __future__ import annotations

import math
import time
from decimal import Decimal
from fractions import Fraction
from typing import Union

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from gmpy2 import mpq

from .. import __version__
from ..engine import (
    builtin_formulas,
    convergence_study,
    formula_by_name,
    optimal_x_scan,
    pi_asymptotic,
    pi_direct,
    pi_via_formula,
    verify_formula,
)
from ..numerics import (
    DigitString,
    PrecisionContext,
    PrecisionError,
    as_rational,
    digit_coincidence,
    format_plain,
    rational_to_decimal,
    reference_arctan,
    reference_erf,
    reference_pi,
    round_to_figures,
)
from ..series import (
    SeriesParams,
    arctan_approx,
    counterpart_approx,
    erf_gauss_sum,
    error_curve,
    sinc_midpoint,
    sinc_simpson,
    sinc_trapezoid,
)
from ..stream import run_bench
from . import schemas

app = FastAPI(
    title="arctanpi",
    version=__version__,
    description="Rational arctangent series, Machin-type formulas and "
    "asymptotic pi computation over HTTP.",
)


@app.exception_handler(ValueError)
async def _bad_input(request: Request, exc: ValueError) -> JSONResponse:
    return JSONResponse(status_code=400, content={"detail": str(exc), "kind": "usage"})


@app.exception_handler(KeyError)
async def _bad_key(request: Request, exc: KeyError) -> JSONResponse:
    return JSONResponse(status_code=400, content={"detail": str(exc), "kind": "usage"})


@app.exception_handler(TypeError)
async def _bad_type(request: Request, exc: TypeError) -> JSONResponse:
    return JSONResponse(status_code=400, content={"detail": str(exc), "kind": "usage"})


@app.exception_handler(PrecisionError)
async def _numeric_failure(request: Request, exc: PrecisionError) -> JSONResponse:
    return JSONResponse(status_code=500, content={"detail": str(exc), "kind": "numeric"})


def _render(value: Union[mpq, Decimal, Fraction, int], digits: int) -> str:
    """Plain decimal string at ``digits`` significant figures; zero is "0"."""
    if isinstance(value, Decimal):
        if value == 0:
            return "0"
        return format_plain(round_to_figures(value, digits))
    q = value if isinstance(value, mpq) else as_rational(value)
    if q == 0:
        return "0"
    return format_plain(rational_to_decimal(q, digits))


def _coincidence(rendered: str, ctx: PrecisionContext) -> int:
    return digit_coincidence(DigitString.from_text(rendered), reference_pi(ctx))


@app.get("/health", response_model=schemas.HealthResponse)
def health() -> schemas.HealthResponse:
    return schemas.HealthResponse(status="ok", version=__version__)


@app.post("/pi", response_model=schemas.PiResponse)
def compute_pi(req: schemas.PiRequest) -> schemas.PiResponse:
    ctx = PrecisionContext(req.digits)
    started = time.perf_counter()
    if req.method == "direct":
        if req.x is not None:
            raise ValueError("--x applies to the asym method only")
        value = pi_direct(req.L).value
        x_repr = None
    elif req.method == "asym":
        if req.x is None:
            raise ValueError("the asym method requires x (a nonzero rational, e.g. 1/100)")
        xq = as_rational(req.x)
        value = pi_asymptotic(xq, req.L).value
        x_repr = str(xq)
    elif req.method.startswith("formula:"):
        if req.x is not None:
            raise ValueError("--x applies to the asym method only")
        formula = formula_by_name(req.method.split(":", 1)[1])
        value = pi_via_formula(formula, req.L).value
        x_repr = None
    else:
        raise ValueError(
            f"unknown method {req.method!r}; expected direct, asym or formula:<name>"
        )
    rendered = _render(value, req.digits)
    coinciding = _coincidence(rendered, ctx)
    elapsed = (time.perf_counter() - started) * 1000
    return schemas.PiResponse(
        method=req.method,
        parameters={"L": req.L, "x": x_repr, "digits": req.digits},
        value=rendered,
        digits_coinciding=coinciding,
        elapsed_ms=elapsed,
    )


@app.post("/arctan", response_model=schemas.ArctanResponse)
def compute_arctan(req: schemas.ArctanRequest) -> schemas.ArctanResponse:
    ctx = PrecisionContext(req.digits)
    started = time.perf_counter()
    is_rational = "/" in req.x or ("." not in req.x and "e" not in req.x.lower())
    if is_rational:
        xq = as_rational(req.x)
        value = arctan_approx(SeriesParams(L=req.L, x=xq)).value
        rendered = _render(value, req.digits)
        reference = reference_arctan(xq, ctx)
    else:
        xd = Decimal(req.x)
        value = arctan_approx(SeriesParams(L=req.L, x=xd), ctx).value
        rendered = _render(value, req.digits)
        reference = reference_arctan(xd, ctx)
    with ctx.local():
        err = abs(
            (rational_to_decimal(value, ctx.working_digits) if is_rational else value)
            - reference
        )
    elapsed = (time.perf_counter() - started) * 1000
    return schemas.ArctanResponse(
        method="arctan-series",
        parameters={"L": req.L, "x": req.x, "digits": req.digits},
        value=rendered,
        reference=_render(reference, req.digits),
        abs_error=_render(err, min(req.digits, 17)),
        elapsed_ms=elapsed,
    )


@app.post("/erf", response_model=schemas.ErfResponse)
def compute_erf(req: schemas.ErfRequest) -> schemas.ErfResponse:
    ctx = PrecisionContext(req.digits)
    started = time.perf_counter()
    value = erf_gauss_sum(req.x, req.L, ctx)
    reference = reference_erf(req.x, ctx)
    with ctx.local():
        err = abs(value - reference)
    elapsed = (time.perf_counter() - started) * 1000
    return schemas.ErfResponse(
        method="erf-gauss-sum",
        parameters={"L": req.L, "x": req.x, "digits": req.digits},
        value=_render(value, req.digits),
        reference=_render(reference, req.digits),
        abs_error=_render(err, min(req.digits, 17)),
        elapsed_ms=elapsed,
    )


@app.post("/sinc", response_model=schemas.SincResponse)
def compute_sinc(req: schemas.SincRequest) -> schemas.SincResponse:
    started = time.perf_counter()
    rules = ("midpoint", "trapezoid", "simpson") if req.rule == "all" else (req.rule,)
    evaluators = {
        "midpoint": sinc_midpoint,
        "trapezoid": sinc_trapezoid,
        "simpson": sinc_simpson,
    }
    values = {rule: evaluators[rule](req.x, req.L) for rule in rules}
    reference = math.sin(req.x) / req.x if req.x != 0 else 1.0
    errors = {rule: abs(v - reference) for rule, v in values.items()}
    elapsed = (time.perf_counter() - started) * 1000
    return schemas.SincResponse(
        method="sinc-expansion",
        parameters={"L": req.L, "x": req.x, "rule": req.rule},
        values=values,
        reference=reference,
        abs_errors=errors,
        elapsed_ms=elapsed,
    )


_FIGURE1_DEFAULT_LS = [100, 200, 300, 400, 500]


def _grid(x_min: Fraction, x_max: Fraction, points: int) -> list[Fraction]:
    span = x_max - x_min
    return [x_min + span * i / (points - 1) for i in range(points)]


@app.post("/figure", response_model=schemas.FigureResponse)
def compute_figure(req: schemas.FigureRequest) -> schemas.FigureResponse:
    ctx = PrecisionContext(req.digits)
    started = time.perf_counter()
    if req.which == 1:
        l_list = req.L_list or _FIGURE1_DEFAULT_LS
        if any(L < 1 for L in l_list):
            raise ValueError("every L must be >= 1")
        x_min = Fraction(req.x_min if req.x_min is not None else -1).limit_denominator(10**9)
        x_max = Fraction(req.x_max if req.x_max is not None else 1).limit_denominator(10**9)
        xs = _grid(x_min, x_max, req.points)
        columns = ["x"] + [f"epsilon_L{L}" for L in l_list]
        curves = [error_curve(L, xs, ctx) for L in l_list]
        rows = []
        for i, x in enumerate(xs):
            row = [_render(x, 17)]
            row += [_render(curves[j][i][1], req.digits) for j in range(len(l_list))]
            rows.append(row)
        parameters = {
            "L_list": l_list,
            "points": req.points,
            "digits": req.digits,
            "x_min": float(x_min),
            "x_max": float(x_max),
        }
    else:
        l_list = req.L_list or [100]
        if len(l_list) != 1:
            raise ValueError("figure 2 takes exactly one L")
        L = l_list[0]
        if L < 1:
            raise ValueError("L must be >= 1")
        x_min = Fraction(req.x_min if req.x_min is not None else -10).limit_denominator(10**9)
        x_max = Fraction(req.x_max if req.x_max is not None else 10).limit_denominator(10**9)
        xs = _grid(x_min, x_max, req.points)
        columns = ["x", "counterpart_series", "arctan_reference"]
        rows = []
        for x in xs:
            series = counterpart_approx(SeriesParams(L=L, x=x), ctx).value
            reference = reference_arctan(x, ctx)
            rows.append(
                [
                    _render(x, 17),
                    _render(series, req.digits),
                    _render(reference, req.digits),
                ]
            )
        parameters = {
            "L_list": l_list,
            "points": req.points,
            "digits": req.digits,
            "x_min": float(x_min),
            "x_max": float(x_max),
        }
    elapsed = (time.perf_counter() - started) * 1000
    return schemas.FigureResponse(
        figure=req.which,
        parameters=parameters,
        columns=columns,
        rows=rows,
        elapsed_ms=elapsed,
    )


def _row(record) -> schemas.ConvergenceRow:
    return schemas.ConvergenceRow(
        L=record.L,
        x=str(record.x),
        value=record.value_text,
        coinciding=record.coinciding,
        abs_error=_render(record.abs_error, 17),
    )


@app.post("/converge", response_model=schemas.ConvergeResponse)
def compute_convergence(req: schemas.ConvergeRequest) -> schemas.ConvergeResponse:
    ctx = PrecisionContext(req.digits)
    started = time.perf_counter()
    study = convergence_study(as_rational(req.x), req.Ls, ctx)
    elapsed = (time.perf_counter() - started) * 1000
    return schemas.ConvergeResponse(
        method="converge",
        parameters={"x": req.x, "Ls": req.Ls, "digits": req.digits},
        records=[_row(r) for r in study.records],
        orders=list(study.orders),
        elapsed_ms=elapsed,
    )


@app.post("/scan", response_model=schemas.ScanResponse)
def compute_scan(req: schemas.ScanRequest) -> schemas.ScanResponse:
    ctx = PrecisionContext(req.digits)
    started = time.perf_counter()
    result = optimal_x_scan(req.L, [as_rational(x) for x in req.xs], ctx)
    elapsed = (time.perf_counter() - started) * 1000
    return schemas.ScanResponse(
        method="scan",
        parameters={"L": req.L, "xs": req.xs, "digits": req.digits},
        best_x=str(result.best_x),
        records=[_row(r) for r in result.records],
        elapsed_ms=elapsed,
    )


@app.get("/formulas", response_model=schemas.FormulasResponse)
def list_formulas() -> schemas.FormulasResponse:
    return schemas.FormulasResponse(
        formulas=[
            schemas.FormulaInfo(
                name=f.name,
                terms=[[str(c), str(b)] for c, b in f.terms],
                verified=f.verified,
            )
            for f in builtin_formulas()
        ]
    )


@app.post("/formulas/verify", response_model=schemas.VerifyResponse)
def verify_formulas(req: schemas.VerifyRequest) -> schemas.VerifyResponse:
    started = time.perf_counter()
    results = [
        schemas.VerifyResult(name=f.name, ok=verify_formula(f, req.digits))
        for f in builtin_formulas()
    ]
    elapsed = (time.perf_counter() - started) * 1000
    return schemas.VerifyResponse(
        method="verify",
        parameters={"digits": req.digits},
        results=results,
        all_ok=all(r.ok for r in results),
        elapsed_ms=elapsed,
    )


@app.post("/bench", response_model=schemas.BenchResponse)
def bench(req: schemas.BenchRequest) -> schemas.BenchResponse:
    report = run_bench(req.L, req.kernel, chunk=req.chunk, threads=req.threads)
    return schemas.BenchResponse(
        method="bench",
        parameters={
            "L": req.L,
            "kernel": req.kernel,
            "chunk": req.chunk,
            "threads": req.threads,
        },
        value=report.value,
        value_hex=report.value_hex,
        elapsed_ms=report.elapsed_s * 1000,
        terms_per_sec=report.terms_per_sec,
        validation_L=report.validation_L,
        validation_exact=report.validation_exact,
        deviation=report.deviation,
        deviation_ulps=report.deviation_ulps,
        deterministic=report.deterministic,
    )
