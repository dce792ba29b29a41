"""Union probability of independent events.

Exact values via the complement product, truncated inclusion-exclusion
series evaluated without combinatorial enumeration, and the
mean-probability approximation with relative-error reporting, plus
independent oracles (exhaustive enumeration, seeded Monte Carlo) for
validation.
"""

from .approx import (
    ComparisonRow,
    ErrorProfile,
    ErrorReport,
    MinTermsResult,
    approx_error_at,
    approx_error_at_mean,
    compare_row,
    error_profile,
    error_report,
    exact_error_at,
    max_error_table,
    min_terms_for_error,
    min_terms_for_error_general,
    relative_error,
)
from .core import (
    as_probability_array,
    exact_union,
    exact_union_equal,
    mean_probability,
)
from .oracle import (
    SUBSET_ENUMERATION_CAP,
    MonteCarloEstimate,
    bernoulli_monte_carlo,
    subset_inclusion_exclusion,
)
from .series import (
    PartialUnion,
    SeriesExpansion,
    SeriesTerm,
    elementary_symmetric_prefix,
    expand_series,
    expand_series_equal,
    log_binomial,
    truncated_union_equal,
    truncated_union_general,
)
from .summation import NeumaierSum

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # core
    "as_probability_array",
    "exact_union",
    "exact_union_equal",
    "mean_probability",
    # series
    "PartialUnion",
    "SeriesExpansion",
    "SeriesTerm",
    "elementary_symmetric_prefix",
    "expand_series",
    "expand_series_equal",
    "log_binomial",
    "truncated_union_equal",
    "truncated_union_general",
    # approximation / error reporting
    "ComparisonRow",
    "ErrorProfile",
    "ErrorReport",
    "MinTermsResult",
    "approx_error_at",
    "approx_error_at_mean",
    "compare_row",
    "error_profile",
    "error_report",
    "exact_error_at",
    "max_error_table",
    "min_terms_for_error",
    "min_terms_for_error_general",
    "relative_error",
    # oracles
    "SUBSET_ENUMERATION_CAP",
    "MonteCarloEstimate",
    "bernoulli_monte_carlo",
    "subset_inclusion_exclusion",
    # numerics
    "NeumaierSum",
]
