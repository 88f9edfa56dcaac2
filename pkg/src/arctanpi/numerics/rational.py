"""Exact rational arithmetic: the zero-rounding-error evaluation substrate.

Backed by ``gmpy2.mpq`` (GMP), which keeps numerator/denominator reduced with
a positive denominator and stays fast when series sums grow to millions of
digits.  ``fractions.Fraction`` and ``p/q`` strings are accepted everywhere
at the boundary.
"""

from __future__ import annotations

from decimal import Decimal
from fractions import Fraction
from typing import Callable, Union

import gmpy2
from gmpy2 import mpq, mpz

from .precision import DigitString, PrecisionContext, round_to_figures

BigRational = mpq
RationalLike = Union[int, str, Fraction, mpq]

_SUM_LEAF = 32  # below this, fall back to a plain sequential fold


def as_rational(value: RationalLike) -> mpq:
    """Coerce ints, Fractions, mpq and ``"p/q"`` / ``"3.25"`` strings.

    Floats are refused: silently adopting a binary approximation would
    smuggle rounding error into exact mode.
    """
    if isinstance(value, mpq):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational value")
    if isinstance(value, int):
        return mpq(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        try:
            return mpq(value.strip())
        except ValueError as exc:
            raise ValueError(f"not a rational literal: {value!r}") from exc
    if isinstance(value, float) or isinstance(value, Decimal):
        raise TypeError(
            f"exact mode requires a rational argument, got {type(value).__name__}"
        )
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def rational_series_sum(term: Callable[[int], mpq], lo: int, hi: int) -> mpq:
    """Exact sum of ``term(i)`` for i in [lo, hi), merged pairwise.

    Pairwise merging keeps operand sizes balanced, which is what makes
    million-term exact sums tractable; the result is independent of the
    merge shape because rational addition is exact.
    """
    width = hi - lo
    if width <= 0:
        return mpq(0)
    if width <= _SUM_LEAF:
        total = mpq(0)
        for i in range(lo, hi):
            total += term(i)
        return total
    mid = lo + width // 2
    return rational_series_sum(term, lo, mid) + rational_series_sum(term, mid, hi)


def rational_to_decimal(value: RationalLike, figures: int) -> Decimal:
    """Round an exact rational half-even to ``figures`` significant digits.

    Works by scaled integer division in GMP, so it stays fast even when the
    rational's numerator and denominator run to millions of digits.
    """
    if figures < 1:
        raise ValueError(f"figures must be >= 1, got {figures}")
    q = as_rational(value)
    if q == 0:
        return round_to_figures(Decimal(0), figures)
    sign = -1 if q < 0 else 1
    num = abs(q.numerator)
    den = q.denominator
    # decimal exponent estimate; corrected below once the quotient is known
    magnitude = gmpy2.num_digits(num, 10) - gmpy2.num_digits(den, 10)
    for _ in range(3):
        shift = figures - magnitude
        if shift >= 0:
            scaled_num, rem = divmod(num * mpz(10) ** shift, den)
        else:
            scaled_num, rem = divmod(num, den * mpz(10) ** (-shift))
        digits = gmpy2.num_digits(scaled_num, 10) if scaled_num else 0
        if digits == figures:
            break
        magnitude += digits - figures
    else:
        raise ArithmeticError(f"could not normalize rational {q} to {figures} digits")
    # half-even on the exact remainder
    divisor = den if shift >= 0 else den * mpz(10) ** (-shift)
    twice = 2 * rem
    if twice > divisor or (twice == divisor and scaled_num % 2 == 1):
        scaled_num += 1
        if gmpy2.num_digits(scaled_num, 10) > figures:  # 999... -> 1000...
            scaled_num //= 10
            magnitude += 1
    coeff = tuple(int(c) for c in str(int(scaled_num)))
    exponent = magnitude - figures
    return Decimal((0 if sign > 0 else 1, coeff, exponent))


def rational_to_digit_string(value: RationalLike, ctx: PrecisionContext) -> DigitString:
    """Presentation-rounded digit stream of an exact rational."""
    return DigitString.from_decimal(rational_to_decimal(value, ctx.decimal_digits))
