"""Composite-Simpson cross-check for the Gaussian-times-erf integral.

The integral of exp(-y^2 t^2) * erf(x t) over t >= 0 equals
arctan(x/y) / (y * sqrt(pi)), which gives an evaluation route for the
arctangent that shares nothing with the series implementations.  The
integrand is evaluated in high-precision decimal; the tail beyond ``cutoff``
is forced below the presentation precision by the precondition on
exp(-y^2 cutoff^2).
"""

from __future__ import annotations

import decimal
import math
from decimal import Decimal, localcontext

from .oracles import RealLike, dec_exp, dec_sqrt_pi, erf_maclaurin, to_working_decimal
from .precision import PrecisionContext


def arctan_via_quadrature(
    x: RealLike,
    y: RealLike,
    step: RealLike,
    cutoff: RealLike,
    ctx: PrecisionContext,
) -> Decimal:
    """Approximate arctan(x/y) by integrating exp(-y^2 t^2) erf(x t).

    ``step`` must divide ``cutoff`` into an even number of Simpson
    subintervals, and the truncated tail exp(-y^2 cutoff^2) must already be
    below 10^-ctx.decimal_digits; both are rejected otherwise.  Accuracy is
    whatever the step buys you -- calibrate by halving the step until two
    successive results agree.
    """
    working = ctx.working_digits
    xd = to_working_decimal(x, working + 8)
    yd = to_working_decimal(y, working + 8)
    stepd = to_working_decimal(step, working + 8)
    cutd = to_working_decimal(cutoff, working + 8)
    if not all(v.is_finite() for v in (xd, yd, stepd, cutd)):
        raise ValueError("x, y, step and cutoff must all be finite")
    if yd <= 0 or stepd <= 0 or cutd <= 0:
        raise ValueError("y, step and cutoff must all be positive")
    tail = float(yd) ** 2 * float(cutd) ** 2
    if tail < ctx.decimal_digits * math.log(10):
        raise ValueError(
            f"cutoff {cutd} leaves a tail above 10^-{ctx.decimal_digits}; "
            "increase it or lower the precision"
        )
    intervals_exact = cutd / stepd
    intervals = int(intervals_exact.to_integral_value())
    if Decimal(intervals) != intervals_exact:
        raise ValueError(f"step {stepd} does not divide cutoff {cutd}")
    if intervals % 2 or intervals < 2:
        raise ValueError(f"step must split cutoff into an even interval count, got {intervals}")

    if xd == 0:
        return ctx.present(Decimal(0))

    erf_ctx = PrecisionContext(working + 4, 6)

    def integrand(t: Decimal) -> Decimal:
        if t == 0:
            return Decimal(0)
        gauss = dec_exp(-(yd * yd * t * t), working + 4)
        return gauss * reference_erf(xd * t, erf_ctx)

    with localcontext(decimal.Context(prec=working + 8)):
        nodes = [integrand(i * stepd) for i in range(intervals + 1)]
        odd = sum(nodes[i] for i in range(1, intervals, 2))
        even = sum(nodes[i] for i in range(2, intervals, 2))
        integral = (stepd / 3) * (nodes[0] + nodes[-1] + 4 * odd + 2 * even)
        value = yd * dec_sqrt_pi(working + 8) * integral
    return ctx.present(value)
