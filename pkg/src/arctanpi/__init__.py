"""High-precision rational arctangent series and pi computation toolkit.

Core layers:

* :mod:`arctanpi.numerics` -- precision contexts, exact rationals, summation
  kernels, reference oracles, quadrature cross-check.
* :mod:`arctanpi.series` -- the expansion series (arctangent, counterpart,
  erf Gaussian sum, sinc cosine expansions) in exact and decimal modes.
* :mod:`arctanpi.engine` -- pi strategies, Machin-type formula registry,
  convergence studies and argument scans.
* :mod:`arctanpi.stream` -- JIT-compiled binary64 streaming benchmarks.
* :mod:`arctanpi.service` -- FastAPI app exposing all of the above.
* :mod:`arctanpi.cli` -- thin command-line client over the service.
"""

from .numerics import (
    BigRational,
    DigitString,
    PrecisionContext,
    PrecisionError,
    arctan_via_quadrature,
    as_rational,
    digit_coincidence,
    rational_to_decimal,
    reference_arctan,
    reference_erf,
    reference_pi,
    reference_pi_decimal,
    sum_compensated,
    sum_pairwise,
    sum_sequential,
)
from .series import (
    ApproxValue,
    SeriesParams,
    arctan_approx,
    counterpart_approx,
    erf_gauss_sum,
    error_curve,
    sinc_midpoint,
    sinc_simpson,
    sinc_trapezoid,
)
from .engine import (
    ConvergenceRecord,
    ConvergenceStudy,
    PiFormula,
    ScanResult,
    builtin_formulas,
    convergence_study,
    optimal_x_scan,
    pi_asymptotic,
    pi_direct,
    pi_via_formula,
    verify_formula,
)
from .stream import BenchReport, run_bench, stream_pi_terms

__version__ = "0.1.0"

__all__ = [
    "ApproxValue",
    "BenchReport",
    "BigRational",
    "ConvergenceRecord",
    "ConvergenceStudy",
    "DigitString",
    "PiFormula",
    "PrecisionContext",
    "PrecisionError",
    "ScanResult",
    "SeriesParams",
    "arctan_approx",
    "arctan_via_quadrature",
    "as_rational",
    "builtin_formulas",
    "convergence_study",
    "counterpart_approx",
    "digit_coincidence",
    "erf_gauss_sum",
    "error_curve",
    "optimal_x_scan",
    "pi_asymptotic",
    "pi_direct",
    "pi_via_formula",
    "rational_to_decimal",
    "reference_arctan",
    "reference_erf",
    "reference_pi",
    "reference_pi_decimal",
    "run_bench",
    "stream_pi_terms",
    "sinc_midpoint",
    "sinc_simpson",
    "sinc_trapezoid",
    "sum_compensated",
    "sum_pairwise",
    "sum_sequential",
    "verify_formula",
    "__version__",
]
