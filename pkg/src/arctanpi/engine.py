"""Pi computation strategies and the experiments built on them.

Three routes to pi, all riding on the truncated arctangent series:

* direct -- the x = 1 truncation, 16L * sum of 1/((2l-1)^2 + 4L^2);
* asymptotic -- the reciprocal-pair truncation, valid at any nonzero x;
* Machin-type formulas -- sum of c_n * arctan(b_n) with small |b_n|.

Digit counting always goes through exact rational evaluation rendered to a
digit string; binary64 never touches a coincidence count.
"""

from __future__ import annotations

import decimal
import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from functools import lru_cache
from typing import Optional, Sequence

from gmpy2 import mpq

from .numerics.oracles import reference_arctan, reference_pi_decimal, to_working_decimal
from .numerics.precision import DigitString, PrecisionContext, digit_coincidence
from .numerics.rational import (
    RationalLike,
    as_rational,
    rational_series_sum,
    rational_to_decimal,
)
from .series import (
    ApproxValue,
    SeriesParams,
    arctan_series_exact,
    _arctan_series_decimal,
)

DEFAULT_STUDY_CONTEXT = PrecisionContext(50)


@dataclass(frozen=True)
class PiFormula:
    """An identity pi = sum of c_n * arctan(b_n) with rational coefficients.

    ``verified`` means the identity has passed :func:`verify_formula` at 50
    digits or more; only verified formulas are accepted for computation
    unless the caller explicitly overrides.
    """

    name: str
    terms: tuple[tuple[mpq, mpq], ...]
    verified: bool = False

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("formula needs a name")
        if not self.terms:
            raise ValueError("formula needs at least one term")
        normalized = tuple((as_rational(c), as_rational(b)) for c, b in self.terms)
        for _, b in normalized:
            if b == 0:
                raise ValueError("arctan argument b must be nonzero")
        object.__setattr__(self, "terms", normalized)


@dataclass(frozen=True)
class ConvergenceRecord:
    """One row of a convergence experiment at (L, x).

    ``value`` is the presentation-rounded digit stream used for coincidence
    counting; ``value_text`` is the same value with its decimal point, for
    human-facing output.
    """

    L: int
    x: mpq
    value: DigitString
    value_text: str
    coinciding: int
    abs_error: Decimal


@dataclass(frozen=True)
class ConvergenceStudy:
    """Records per truncation order plus empirical orders between rows.

    ``orders[i]`` is the error-decay exponent between records i and i+1,
    so a single-record study carries no estimates.
    """

    records: tuple[ConvergenceRecord, ...]
    orders: tuple[float, ...]


@dataclass(frozen=True)
class ScanResult:
    """Outcome of an argument scan at fixed truncation order."""

    best_x: mpq
    records: tuple[ConvergenceRecord, ...]


def _check_order(L: int) -> None:
    if not isinstance(L, int) or isinstance(L, bool) or L < 1:
        raise ValueError(f"L must be a positive integer, got {L!r}")


def pi_direct_exact(L: int) -> mpq:
    """Exact truncation 16L * sum of 1/((2l-1)^2 + 4L^2)."""
    _check_order(L)
    four_l2 = 4 * L * L

    def term(l: int) -> mpq:
        odd = 2 * l - 1
        return mpq(1, odd * odd + four_l2)

    return 16 * L * rational_series_sum(term, 1, L + 1)


def pi_direct(L: int, ctx: Optional[PrecisionContext] = None) -> ApproxValue:
    """Pi from the direct (x = 1) truncation; equals 4 * arctan series at 1."""
    _check_order(L)
    if ctx is None:
        return ApproxValue(
            value=pi_direct_exact(L),
            params=SeriesParams(L=L, x=mpq(1)),
            kernel="exact",
            precision=None,
        )
    with localcontext(decimal.Context(prec=ctx.working_digits + 8)):
        four_l2 = Decimal(4 * L * L)
        total = Decimal(0)
        for l in range(1, L + 1):
            odd = 2 * l - 1
            total += 1 / (odd * odd + four_l2)
        value = 16 * L * total
    return ApproxValue(
        value=ctx.present(value),
        params=SeriesParams(L=L, x=mpq(1)),
        kernel="decimal-sequential",
        precision=ctx,
    )


def pi_asymptotic_exact(x: RationalLike, L: int) -> mpq:
    """Exact reciprocal-pair truncation
    8L|x| * sum of [1/((2l-1)^2 x^2 + 4L^2) + 1/((2l-1)^2 + 4L^2 x^2)]."""
    _check_order(L)
    xq = as_rational(x)
    if xq == 0:
        raise ValueError("x must be nonzero: the reciprocal-pair structure degenerates at 0")
    four_l2 = 4 * L * L
    x2 = xq * xq

    def term(l: int) -> mpq:
        odd_sq = (2 * l - 1) ** 2
        return 1 / (odd_sq * x2 + four_l2) + 1 / (odd_sq + four_l2 * x2)

    return 8 * L * abs(xq) * rational_series_sum(term, 1, L + 1)


def pi_asymptotic(
    x,
    L: int,
    ctx: Optional[PrecisionContext] = None,
) -> ApproxValue:
    """Pi from the reciprocal-pair truncation at nonzero x."""
    _check_order(L)
    if ctx is None:
        xq = as_rational(x)
        return ApproxValue(
            value=pi_asymptotic_exact(xq, L),
            params=SeriesParams(L=L, x=xq),
            kernel="exact",
            precision=None,
        )
    working = ctx.working_digits + 8
    xd = to_working_decimal(x, working)
    if not xd.is_finite() or xd == 0:
        raise ValueError(f"x must be finite and nonzero, got {x!r}")
    with localcontext(decimal.Context(prec=working)):
        x2 = xd * xd
        four_l2 = Decimal(4 * L * L)
        total = Decimal(0)
        for l in range(1, L + 1):
            odd_sq = Decimal((2 * l - 1) ** 2)
            total += 1 / (odd_sq * x2 + four_l2) + 1 / (odd_sq + four_l2 * x2)
        value = 8 * L * abs(xd) * total
    return ApproxValue(
        value=ctx.present(value),
        params=SeriesParams(L=L, x=x),
        kernel="decimal-sequential",
        precision=ctx,
    )


def verify_formula(formula: PiFormula, digits: int) -> bool:
    """Check the identity against reference arctangents, never the series.

    True iff |sum of c_n * arctan(b_n) - pi| < 10^-(digits-1), with both
    sides evaluated a few digits beyond ``digits`` so the threshold is
    meaningful.
    """
    if digits < 10:
        raise ValueError(f"digits must be >= 10, got {digits}")
    ctx = PrecisionContext(digits + 5)
    working = ctx.working_digits
    with localcontext(decimal.Context(prec=working)):
        total = Decimal(0)
        for c, b in formula.terms:
            total += to_working_decimal(c, working) * reference_arctan(b, ctx)
        gap = abs(total - reference_pi_decimal(ctx))
    return gap < Decimal(10) ** -(digits - 1)


@lru_cache(maxsize=1)
def builtin_formulas() -> tuple[PiFormula, ...]:
    """The registry: direct, Machin, and the three-term identity.

    Every entry is verified at 50 digits before being handed out.
    """
    raw = (
        PiFormula(name="direct", terms=((mpq(4), mpq(1)),)),
        PiFormula(name="machin", terms=((mpq(16), mpq(1, 5)), (mpq(-4), mpq(1, 239)))),
        PiFormula(
            name="three-term",
            terms=(
                (mpq(48), mpq(1, 18)),
                (mpq(32), mpq(1, 57)),
                (mpq(-20), mpq(1, 239)),
            ),
        ),
    )
    verified = []
    for formula in raw:
        if not verify_formula(formula, 50):
            raise ArithmeticError(f"builtin formula {formula.name!r} failed verification")
        verified.append(PiFormula(name=formula.name, terms=formula.terms, verified=True))
    return tuple(verified)


def formula_by_name(name: str) -> PiFormula:
    for formula in builtin_formulas():
        if formula.name == name:
            return formula
    known = ", ".join(f.name for f in builtin_formulas())
    raise KeyError(f"unknown formula {name!r} (known: {known})")


def pi_via_formula(
    formula: PiFormula,
    L: int,
    ctx: Optional[PrecisionContext] = None,
    allow_unverified: bool = False,
) -> ApproxValue:
    """Pi as sum of c_n * (arctangent series at b_n), all at the same L."""
    _check_order(L)
    if not formula.verified and not allow_unverified:
        raise ValueError(
            f"formula {formula.name!r} is unverified; run verify_formula first "
            "or pass allow_unverified=True"
        )
    if ctx is None:
        total = mpq(0)
        for c, b in formula.terms:
            total += c * arctan_series_exact(b, L)
        return ApproxValue(
            value=total,
            params=SeriesParams(L=L, x=None),
            kernel=f"exact/formula:{formula.name}",
            precision=None,
        )
    inner = PrecisionContext(ctx.working_digits + 4, 8)
    with localcontext(decimal.Context(prec=ctx.working_digits + 8)):
        total_d = Decimal(0)
        for c, b in formula.terms:
            series = _arctan_series_decimal(b, L, inner)
            total_d += to_working_decimal(c, inner.working_digits) * series
    return ApproxValue(
        value=ctx.present(total_d),
        params=SeriesParams(L=L, x=None),
        kernel=f"decimal/formula:{formula.name}",
        precision=ctx,
    )


def _record(
    x: mpq, L: int, value: mpq, ctx: PrecisionContext
) -> ConvergenceRecord:
    rendered = rational_to_decimal(value, ctx.decimal_digits)
    digits = DigitString.from_decimal(rendered)
    reference = reference_pi_decimal(ctx)
    count = digit_coincidence(digits, DigitString.from_decimal(reference))
    working = ctx.working_digits
    with localcontext(decimal.Context(prec=working)):
        err = abs(rational_to_decimal(value, working) - reference_pi_decimal(
            PrecisionContext(working, 10)
        ))
    return ConvergenceRecord(
        L=L,
        x=x,
        value=digits,
        value_text=format(rendered, "f"),
        coinciding=count,
        abs_error=err,
    )


def empirical_order(
    err_lo: Decimal, err_hi: Decimal, l_lo: int, l_hi: int
) -> float:
    """Error-decay exponent p with err ~ L^-p between two rows."""
    if err_lo <= 0 or err_hi <= 0:
        return math.nan
    return float(
        (err_lo.ln() - err_hi.ln()) / (Decimal(l_hi).ln() - Decimal(l_lo).ln())
    )


def convergence_study(
    x: RationalLike,
    Ls: Sequence[int],
    ctx: PrecisionContext = DEFAULT_STUDY_CONTEXT,
) -> ConvergenceStudy:
    """Evaluate the asymptotic truncation at each L and measure error decay.

    ``Ls`` must be strictly ascending.  Exact mode only: digit counts come
    from rationally-evaluated values rendered at ctx precision.
    """
    if not Ls:
        raise ValueError("Ls must be nonempty")
    for L in Ls:
        _check_order(L)
    if any(b <= a for a, b in zip(Ls, Ls[1:])):
        raise ValueError(f"Ls must be strictly ascending, got {list(Ls)}")
    xq = as_rational(x)
    records = []
    for L in Ls:
        value = pi_asymptotic_exact(xq, L)
        records.append(_record(xq, L, value, ctx))
    orders = tuple(
        empirical_order(a.abs_error, b.abs_error, a.L, b.L)
        for a, b in zip(records, records[1:])
    )
    return ConvergenceStudy(records=tuple(records), orders=orders)


def optimal_x_scan(
    L: int,
    xs: Sequence[RationalLike],
    ctx: PrecisionContext = DEFAULT_STUDY_CONTEXT,
) -> ScanResult:
    """Try each candidate argument at fixed L; best = most coinciding digits.

    Ties break toward the smallest |x|.  This is a grid scan, not a claim of
    global optimality.
    """
    _check_order(L)
    candidates = [as_rational(x) for x in xs]
    if len(candidates) < 2:
        raise ValueError("need at least two candidate arguments")
    if any(c == 0 for c in candidates):
        raise ValueError("candidate arguments must be nonzero")
    records = []
    for xq in candidates:
        value = pi_asymptotic_exact(xq, L)
        records.append(_record(xq, L, value, ctx))
    best = max(records, key=lambda r: (r.coinciding, -abs(r.x)))
    return ScanResult(best_x=best.x, records=tuple(records))
