"""Reference values the rest of the project is measured against.

The reference arctangent deliberately avoids the rational series under test:
it halves its argument via arctan(x) = 2*arctan(x / (1 + sqrt(1 + x^2)))
until |x| < 1/10 and then runs the alternating Maclaurin series, whose
remainder is bounded by its first omitted term.  The reference pi combines
reference arctangents through 16*arctan(1/5) - 4*arctan(1/239), is pinned to
a 50-digit anchor, and every request is recomputed at two working precisions
that must agree.  A disagreement raises instead of degrading: a wrong
reference silently corrupts every digit count downstream.
"""

from __future__ import annotations

import decimal
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache
from typing import Union

from gmpy2 import mpq

from .precision import DigitString, PrecisionContext, PrecisionError, round_to_figures
from .rational import as_rational

RealLike = Union[int, float, str, Decimal, Fraction, mpq]

# First 50 digits of pi, used as an immutable anchor for every computed
# reference value (the dual-precision self-check guards the digits beyond).
PI_ANCHOR_50 = "3.1415926535897932384626433832795028841971693993751"

MAX_REFERENCE_DIGITS = 5000


def to_working_decimal(x: RealLike, digits: int) -> Decimal:
    """Convert a real-like input to Decimal at ``digits`` precision.

    Floats convert exactly (every binary64 value is a decimal fraction);
    rationals divide at the requested precision; strings may be decimal
    literals or ``p/q``.
    """
    with localcontext(decimal.Context(prec=digits)):
        if isinstance(x, Decimal):
            return +x
        if isinstance(x, float):
            return +Decimal(x)
        if isinstance(x, str):
            s = x.strip()
            if "/" not in s:
                try:
                    return +Decimal(s)
                except decimal.InvalidOperation as exc:
                    raise ValueError(f"not a decimal literal: {x!r}") from exc
            x = as_rational(s)
        if isinstance(x, (int, Fraction, mpq)):
            q = as_rational(x)
            return Decimal(int(q.numerator)) / Decimal(int(q.denominator))
    raise TypeError(f"cannot interpret {type(x).__name__} as a real value")


def _atan_small(x: Decimal, working: int) -> Decimal:
    """Maclaurin arctangent for |x| < 1/10 at ``working`` digits."""
    with localcontext(decimal.Context(prec=working + 8)):
        total = x
        power = x
        x2 = x * x
        n = 1
        stop = Decimal(10) ** -(working + 4)
        while True:
            power *= x2
            n += 2
            delta = power / n
            total += -delta if n % 4 == 3 else delta
            if abs(delta) < stop:
                break
    with localcontext(decimal.Context(prec=working)):
        return +total


def _atan(x: Decimal, working: int) -> Decimal:
    """Argument-halving arctangent at ``working`` digits; odd by structure."""
    if x == 0:
        return Decimal(0)
    negative = x < 0
    with localcontext(decimal.Context(prec=working + 8)):
        y = abs(x)
        halvings = 0
        tenth = Decimal("0.1")
        while y >= tenth:
            y = y / (1 + (1 + y * y).sqrt())
            halvings += 1
        base = _atan_small(+y, working + 4)
        result = base * (1 << halvings)
    with localcontext(decimal.Context(prec=working)):
        result = +result
    return -result if negative else result


@lru_cache(maxsize=64)
def _machin_pi(working: int) -> Decimal:
    """pi at ``working`` digits from 16*arctan(1/5) - 4*arctan(1/239)."""
    with localcontext(decimal.Context(prec=working + 8)):
        a5 = _atan(Decimal(1) / Decimal(5), working + 6)
        a239 = _atan(Decimal(1) / Decimal(239), working + 6)
        value = 16 * a5 - 4 * a239
    with localcontext(decimal.Context(prec=working)):
        return +value


def _checked_pi(working: int) -> Decimal:
    """pi at ``working`` digits, cross-checked at two precisions.

    The recomputation at +20 digits must agree to working-3 digits (the
    slack keeps legitimate last-place rounding ties from tripping the
    check), and the leading digits must match the 50-digit anchor.
    """
    first = _machin_pi(working)
    second = _machin_pi(working + 20)
    with localcontext(decimal.Context(prec=working + 25)):
        if abs(first - second) > Decimal(10) ** (first.adjusted() - (working - 3)):
            raise PrecisionError(
                f"pi self-check failed at {working} digits: recomputation at "
                f"{working + 20} digits disagrees"
            )
    # Compare truncated digit streams; stay clear of the rounded last places.
    anchor_digits = max(1, min(working - 5, 50))
    plain = format(first, "f")
    if plain[: anchor_digits + 1] != PI_ANCHOR_50[: anchor_digits + 1]:
        raise PrecisionError("pi self-check failed: anchor digits do not match")
    return first


def reference_pi_decimal(ctx: PrecisionContext) -> Decimal:
    """pi rounded to ctx.decimal_digits significant digits."""
    if ctx.decimal_digits > MAX_REFERENCE_DIGITS:
        raise PrecisionError(
            f"requested {ctx.decimal_digits} digits exceeds the supported "
            f"maximum of {MAX_REFERENCE_DIGITS}"
        )
    return ctx.present(_checked_pi(ctx.working_digits))


def reference_pi(ctx: PrecisionContext) -> DigitString:
    """Digit stream of pi at ctx.decimal_digits, anchor- and self-checked."""
    return DigitString.from_decimal(reference_pi_decimal(ctx))


def reference_arctan(x: RealLike, ctx: PrecisionContext) -> Decimal:
    """arctan(x) to ctx.decimal_digits digits, independent of any series
    under test.  Odd in x by construction."""
    xd = to_working_decimal(x, ctx.working_digits + 8)
    if not xd.is_finite():
        raise ValueError(f"arctan argument must be finite, got {x!r}")
    return ctx.present(_atan(xd, ctx.working_digits))


def _exp_nonnegative(x: Decimal, working: int) -> Decimal:
    with localcontext(decimal.Context(prec=working + 8)):
        total = Decimal(1)
        term = Decimal(1)
        n = 0
        stop = Decimal(10) ** -(working + 4)
        limit = float(x)
        while True:
            n += 1
            term = term * x / n
            total += term
            if n > limit and term < stop:
                break
    with localcontext(decimal.Context(prec=working)):
        return +total


def dec_exp(x: RealLike, digits: int) -> Decimal:
    """exp(x) at ``digits`` working digits.

    Negative arguments go through 1/exp(-x) so the Taylor series keeps all
    terms positive and never cancels.
    """
    xd = to_working_decimal(x, digits + 8)
    if not xd.is_finite():
        raise ValueError(f"exp argument must be finite, got {x!r}")
    if abs(xd) > 400:
        raise PrecisionError(f"exp argument {xd} out of the supported range [-400, 400]")
    if xd < 0:
        with localcontext(decimal.Context(prec=digits + 8)):
            value = 1 / _exp_nonnegative(-xd, digits + 6)
        with localcontext(decimal.Context(prec=digits)):
            return +value
    return _exp_nonnegative(xd, digits)


def dec_cos(x: RealLike, digits: int) -> Decimal:
    """cos(x) at ``digits`` working digits for |x| <= 120.

    The alternating series cancels down from terms as large as e^|x|, so the
    working precision carries |x|*log10(e) extra digits to absorb it.
    """
    xd = to_working_decimal(x, digits + 8)
    if not xd.is_finite():
        raise ValueError(f"cos argument must be finite, got {x!r}")
    xd = abs(xd)
    if xd > 120:
        raise PrecisionError("cos argument reduction beyond |x| = 120 is unsupported")
    margin = int(float(xd) * 0.4343) + 12
    with localcontext(decimal.Context(prec=digits + margin)):
        total = Decimal(1)
        term = Decimal(1)
        x2 = xd * xd
        n = 0
        stop = Decimal(10) ** -(digits + 4)
        limit = float(xd)
        while True:
            n += 1
            term = term * x2 / ((2 * n - 1) * (2 * n))
            total += -term if n % 2 else term
            if 2 * n > limit and term < stop:
                break
    with localcontext(decimal.Context(prec=digits)):
        return +total


def dec_sqrt_pi(digits: int) -> Decimal:
    """sqrt(pi) at ``digits`` working digits."""
    with localcontext(decimal.Context(prec=digits + 4)):
        root = _checked_pi(digits + 4).sqrt()
    with localcontext(decimal.Context(prec=digits)):
        return +root


def erf_maclaurin(x: RealLike, working: int, max_abs: float = 25.0) -> Decimal:
    """erf(x) at ``working`` digits via the Maclaurin series.

    Terms alternate and grow to roughly e^(x^2) before decaying, so the
    working precision carries x^2*log10(e) extra digits to absorb the
    cancellation; the tail is bounded by the first omitted term once terms
    decrease (n > x^2), which is when iteration is allowed to stop.  Odd in
    x by construction.
    """
    xd = to_working_decimal(x, working + 8)
    if not xd.is_finite():
        raise ValueError(f"erf argument must be finite, got {x!r}")
    if abs(xd) > max_abs:
        raise PrecisionError(
            f"erf argument {xd} exceeds the supported range |x| <= {max_abs}"
        )
    if xd == 0:
        return Decimal(0)
    negative = xd < 0
    xd = abs(xd)
    x2f = float(xd) ** 2
    margin = int(x2f * 0.4343) + 12
    with localcontext(decimal.Context(prec=working + margin)):
        x2 = xd * xd
        term = xd  # x^(2n+1) / n!
        total = Decimal(0)
        n = 0
        stop = Decimal(10) ** -(working + 4)
        while True:
            delta = term / (2 * n + 1)
            total += -delta if n % 2 else delta
            n += 1
            term = term * x2 / n
            if n > x2f and term < stop:
                break
        value = 2 * total / dec_sqrt_pi(working + 8)
    with localcontext(decimal.Context(prec=working)):
        value = +value
    return -value if negative else value


def reference_erf(x: RealLike, ctx: PrecisionContext) -> Decimal:
    """erf(x) to ctx.decimal_digits digits; requires |x| <= 10."""
    working = ctx.working_digits
    xd = to_working_decimal(x, working + 8)
    if not xd.is_finite():
        raise ValueError(f"erf argument must be finite, got {x!r}")
    if abs(xd) > 10:
        raise ValueError(f"erf argument must satisfy |x| <= 10, got {xd}")
    return ctx.present(erf_maclaurin(xd, working))
