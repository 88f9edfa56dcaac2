"""Arithmetic substrate: precision contexts, exact rationals, summation
kernels, reference oracles and the quadrature cross-check."""

from .precision import (
    DigitString,
    PrecisionContext,
    PrecisionError,
    digit_coincidence,
    format_plain,
    round_to_figures,
)
from .rational import (
    BigRational,
    as_rational,
    rational_series_sum,
    rational_to_decimal,
    rational_to_digit_string,
)
from .summation import sum_compensated, sum_pairwise, sum_sequential
from .oracles import (
    MAX_REFERENCE_DIGITS,
    PI_ANCHOR_50,
    dec_cos,
    dec_exp,
    dec_sqrt_pi,
    reference_arctan,
    reference_erf,
    reference_pi,
    reference_pi_decimal,
    to_working_decimal,
)
from .quadrature import arctan_via_quadrature

__all__ = [
    "BigRational",
    "DigitString",
    "MAX_REFERENCE_DIGITS",
    "PI_ANCHOR_50",
    "PrecisionContext",
    "PrecisionError",
    "arctan_via_quadrature",
    "as_rational",
    "dec_cos",
    "dec_exp",
    "dec_sqrt_pi",
    "digit_coincidence",
    "format_plain",
    "rational_series_sum",
    "rational_to_decimal",
    "rational_to_digit_string",
    "reference_arctan",
    "reference_erf",
    "reference_pi",
    "reference_pi_decimal",
    "round_to_figures",
    "sum_compensated",
    "sum_pairwise",
    "sum_sequential",
    "to_working_decimal",
]
