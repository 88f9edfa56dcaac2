"""The expansion series: rational arctangent, its counterpart, the Gaussian
sum for erf, and three cosine expansions of sinc.

Each series evaluates in one of two modes.  Exact mode (the default) keeps
everything in big-rational arithmetic -- the truncated sum comes back as the
mathematically exact rational, which turns algebraic identities into literal
equality tests.  Real mode evaluates term by term in high-precision decimal
at a caller-supplied :class:`PrecisionContext`.
"""

from __future__ import annotations

import decimal
import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Optional, Sequence, Union

from gmpy2 import mpq

from .numerics.oracles import RealLike, dec_cos, dec_sqrt_pi, dec_exp, reference_arctan, to_working_decimal
from .numerics.precision import PrecisionContext
from .numerics.rational import RationalLike, as_rational, rational_series_sum


@dataclass(frozen=True)
class SeriesParams:
    """Truncation order and argument for one series evaluation.

    ``x`` stays whatever flavour the caller provided: a rational for exact
    mode, any real-like for decimal mode.  Composite evaluations (formula
    combinations of several arguments) carry ``x=None``.
    """

    L: int
    x: Optional[Union[RealLike, RationalLike]]

    def __post_init__(self) -> None:
        if not isinstance(self.L, int) or isinstance(self.L, bool) or self.L < 1:
            raise ValueError(f"L must be a positive integer, got {self.L!r}")
        if isinstance(self.x, float) and not math.isfinite(self.x):
            raise ValueError(f"x must be finite, got {self.x!r}")


@dataclass(frozen=True)
class ApproxValue:
    """A computed series value together with its provenance."""

    value: Union[mpq, Decimal]
    params: SeriesParams
    kernel: str
    precision: Optional[PrecisionContext]  # None marks exact mode

    @property
    def exact(self) -> bool:
        return self.precision is None


def _require_rational(x, what: str) -> mpq:
    try:
        return as_rational(x)
    except TypeError as exc:
        raise TypeError(f"exact-mode {what} needs a rational argument") from exc


def arctan_series_exact(x: RationalLike, L: int) -> mpq:
    """Exact truncated arctangent series: 4L * sum of x/((2l-1)^2 x^2 + 4L^2)."""
    xq = _require_rational(x, "arctangent series")
    if xq == 0:
        return mpq(0)
    four_l2 = 4 * L * L
    x2 = xq * xq

    def term(l: int) -> mpq:
        odd = 2 * l - 1
        return xq / (odd * odd * x2 + four_l2)

    return 4 * L * rational_series_sum(term, 1, L + 1)


def _arctan_series_decimal(x: RealLike, L: int, ctx: PrecisionContext) -> Decimal:
    working = ctx.working_digits + 8
    xd = to_working_decimal(x, working)
    if xd == 0:
        return ctx.present(Decimal(0))
    with localcontext(decimal.Context(prec=working)):
        x2 = xd * xd
        four_l2 = Decimal(4 * L * L)
        total = Decimal(0)
        for l in range(1, L + 1):
            odd = 2 * l - 1
            total += xd / (odd * odd * x2 + four_l2)
        value = 4 * L * total
    return ctx.present(value)


def arctan_approx(params: SeriesParams, ctx: Optional[PrecisionContext] = None) -> ApproxValue:
    """Truncated rational approximation of arctan at ``params``.

    With ``ctx=None`` the sum is evaluated exactly over rationals; otherwise
    term by term in decimal at working precision, ascending l.
    """
    if ctx is None:
        value: Union[mpq, Decimal] = arctan_series_exact(params.x, params.L)
        kernel = "exact"
    else:
        value = _arctan_series_decimal(params.x, params.L, ctx)
        kernel = "decimal-sequential"
    return ApproxValue(value=value, params=params, kernel=kernel, precision=ctx)


def counterpart_series_exact(x: RationalLike, L: int) -> mpq:
    """Exact truncated counterpart series: -4L * sum of x/((2l-1)^2 + 4L^2 x^2).

    Algebraically identical to -arctan_series_exact(1/x, L) for x != 0.
    """
    xq = _require_rational(x, "counterpart series")
    if xq == 0:
        return mpq(0)
    four_l2 = 4 * L * L
    x2 = xq * xq

    def term(l: int) -> mpq:
        odd = 2 * l - 1
        return xq / (odd * odd + four_l2 * x2)

    return -4 * L * rational_series_sum(term, 1, L + 1)


def _counterpart_series_decimal(x: RealLike, L: int, ctx: PrecisionContext) -> Decimal:
    working = ctx.working_digits + 8
    xd = to_working_decimal(x, working)
    if xd == 0:
        return ctx.present(Decimal(0))
    with localcontext(decimal.Context(prec=working)):
        x2 = xd * xd
        four_l2 = Decimal(4 * L * L)
        total = Decimal(0)
        for l in range(1, L + 1):
            odd = 2 * l - 1
            total += xd / (odd * odd + four_l2 * x2)
        value = -4 * L * total
    return ctx.present(value)


def counterpart_approx(params: SeriesParams, ctx: Optional[PrecisionContext] = None) -> ApproxValue:
    """Truncated series for -sgn(x) pi/2 + arctan(x); zero at x = 0."""
    if ctx is None:
        value: Union[mpq, Decimal] = counterpart_series_exact(params.x, params.L)
        kernel = "exact"
    else:
        value = _counterpart_series_decimal(params.x, params.L, ctx)
        kernel = "decimal-sequential"
    return ApproxValue(value=value, params=params, kernel=kernel, precision=ctx)


def erf_gauss_sum(x: RealLike, L: int, ctx: PrecisionContext) -> Decimal:
    """Gaussian-sum approximation of erf:
    (2x / sqrt(pi)) * (1/L) * sum of exp(-(l - 1/2)^2 x^2 / L^2)."""
    if L < 1:
        raise ValueError(f"L must be >= 1, got {L}")
    working = ctx.working_digits + 8
    xd = to_working_decimal(x, working)
    if not xd.is_finite():
        raise ValueError(f"x must be finite, got {x!r}")
    if xd == 0:
        return ctx.present(Decimal(0))
    with localcontext(decimal.Context(prec=working)):
        x2 = xd * xd
        l2 = Decimal(L * L)
        total = Decimal(0)
        for l in range(1, L + 1):
            half_odd_sq = Decimal((2 * l - 1) ** 2) / 4  # (l - 1/2)^2, exactly
            total += dec_exp(-(half_odd_sq * x2 / l2), working)
        value = 2 * xd / dec_sqrt_pi(working) * total / L
    return ctx.present(value)


# -- sinc cosine expansions --------------------------------------------------
#
# Binary64 paths sum with math.fsum so each sum is correctly rounded; the
# midpoint/trapezoid pair then reproduces the Simpson expansion to a few ulps.
# High-precision paths evaluate every cosine once in decimal and combine them
# in exact rational arithmetic, returning the combination as a Fraction,
# which makes the 2/3-1/3 weighted-sum identity hold literally.


class _CosTable:
    """Working-precision cosines of x*num/den, exposed as exact rationals.

    Keyed by (num, den) so the same angle evaluated from two different
    expansions yields the identical rational.
    """

    def __init__(self, x: RealLike, ctx: PrecisionContext):
        self.working = ctx.working_digits + 8
        self.x = to_working_decimal(x, self.working)
        if not self.x.is_finite():
            raise ValueError(f"x must be finite, got {x!r}")
        self._cache: dict[tuple[int, int], Fraction] = {}

    def at(self, num: int, den: int) -> Fraction:
        key = (num, den)
        hit = self._cache.get(key)
        if hit is None:
            with localcontext(decimal.Context(prec=self.working)):
                angle = self.x * num / den
            hit = Fraction(*dec_cos(angle, self.working).as_integer_ratio())
            self._cache[key] = hit
        return hit


def _check_order(L: int) -> None:
    if not isinstance(L, int) or isinstance(L, bool) or L < 1:
        raise ValueError(f"L must be a positive integer, got {L!r}")


def sinc_midpoint(x, L: int, ctx: Optional[PrecisionContext] = None):
    """Midpoint-rule cosine expansion of sinc:
    (1/L) * sum of cos((l - 1/2) x / L).

    Returns binary64 by default; with a precision context, the exact
    Fraction combining working-precision cosines.
    """
    _check_order(L)
    if ctx is None:
        xf = float(x)
        if not math.isfinite(xf):
            raise ValueError(f"x must be finite, got {x!r}")
        return math.fsum(math.cos((l - 0.5) * xf / L) for l in range(1, L + 1)) / L
    cos = _CosTable(x, ctx)
    return sum(cos.at(2 * l - 1, 2 * L) for l in range(1, L + 1)) / L


def sinc_trapezoid(x, L: int, ctx: Optional[PrecisionContext] = None):
    """Trapezoidal-rule cosine expansion of sinc:
    (1/L) * [(1 + cos x)/2 + sum of cos(l x / L) for l < L]; the interior
    sum is empty at L = 1."""
    _check_order(L)
    if ctx is None:
        xf = float(x)
        if not math.isfinite(xf):
            raise ValueError(f"x must be finite, got {x!r}")
        head = (1.0 + math.cos(xf)) / 2.0
        return math.fsum([head] + [math.cos(l * xf / L) for l in range(1, L)]) / L
    cos = _CosTable(x, ctx)
    return ((1 + cos.at(1, 1)) / 2 + sum(cos.at(l, L) for l in range(1, L))) / L


def sinc_simpson(x, L: int, ctx: Optional[PrecisionContext] = None):
    """Simpson-rule cosine expansion of sinc:
    (1/(6L)) * [1 + cos x + 4*sum of cos((l-1/2)x/L) + 2*sum of cos(l x/L)]."""
    _check_order(L)
    if ctx is None:
        xf = float(x)
        if not math.isfinite(xf):
            raise ValueError(f"x must be finite, got {x!r}")
        terms = [1.0, math.cos(xf)]
        terms += [4.0 * math.cos((l - 0.5) * xf / L) for l in range(1, L + 1)]
        terms += [2.0 * math.cos(l * xf / L) for l in range(1, L)]
        return math.fsum(terms) / (6 * L)
    cos = _CosTable(x, ctx)
    total = 1 + cos.at(1, 1)
    total += 4 * sum(cos.at(2 * l - 1, 2 * L) for l in range(1, L + 1))
    total += 2 * sum(cos.at(l, L) for l in range(1, L))
    return total / (6 * L)


def fraction_to_decimal(q: Fraction, ctx: PrecisionContext) -> Decimal:
    """Presentation-rounded decimal of an exact fraction."""
    with localcontext(decimal.Context(prec=ctx.working_digits)):
        value = Decimal(q.numerator) / Decimal(q.denominator)
    return ctx.present(value)


def error_curve(
    L: int,
    xs: Sequence[RealLike],
    ctx: PrecisionContext,
) -> list[tuple[RealLike, Decimal]]:
    """Pointwise truncation error of the arctangent series against the
    reference arctangent, one (x, error) pair per input, order preserved.

    Operands are evaluated with extra working digits and only the
    difference is presentation-rounded, so the error itself carries close
    to ctx.decimal_digits meaningful digits despite the cancellation.
    """
    if L < 1:
        raise ValueError(f"L must be >= 1, got {L}")
    inner = PrecisionContext(ctx.working_digits + 8, 8)
    out: list[tuple[RealLike, Decimal]] = []
    for x in xs:
        approx = _arctan_series_decimal(x, L, inner)
        ref = reference_arctan(x, inner)
        with localcontext(decimal.Context(prec=inner.working_digits)):
            eps = ref - approx
        out.append((x, ctx.present(eps)))
    return out
