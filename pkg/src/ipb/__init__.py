"""Incomplete poly-Bernoulli numbers built from restricted and associated
Stirling numbers of the second kind, with exact generating-function checks
and a Lambert-W series for the Riemann zeta function."""

from .analytic import (
    ZetaSeriesRun,
    incomplete_bernoulli_numeric,
    lambert_w,
    polylog_numeric,
    zeta_reference,
    zeta_series,
)
from .bernoulli import (
    divisibility_scan,
    incomplete_poly_bernoulli,
    poly_bernoulli,
    residue_mod_p,
)
from .errors import (
    DomainError,
    InputTooLargeError,
    IPBError,
    NoConvergenceError,
    NonzeroConstantTermError,
    NotPrimeError,
    ValuationError,
)
from .series import (
    TruncatedEGF,
    em_series,
    gf_incomplete_bernoulli,
    gf_iterated_integral,
    polylog_series,
    series_antiderivative,
    series_compose,
    series_div,
    series_log1p,
)
from .stirling import (
    StirlingTable,
    partition_count_oracle,
    stirling2,
    stirling2_associated,
    stirling2_restricted,
    stirling_row,
    stirling_triangle,
)
from .variant import Variant

__version__ = "0.1.0"
