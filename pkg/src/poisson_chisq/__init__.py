"""Chi-square interval estimation for a Poisson mean or mean rate.

Six degree-of-freedom rules (classical, structural, three objective-prior
Bayes rules, and two one-degree adjustments), their exact coverage
probabilities over a grid of true means, and reporting helpers.
"""

from .coverage import (
    STANDARD_GRID,
    CoverageCurve,
    GridSpec,
    MonteCarloEstimate,
    SummaryStats,
    coverage_at,
    coverage_curve,
    mc_coverage,
    summarize,
    summary_table,
)
from .intervals import (
    DegreePair,
    EstimationInterval,
    MethodKind,
    degrees_for,
    lambda_interval,
    rate_interval,
)
from .special_fn import (
    DomainError,
    chi_square_cdf,
    chi_square_quantile,
    log_gamma,
    poisson_cdf,
    poisson_pmf,
    regularized_lower_gamma,
)

__version__ = "0.1.0"

__all__ = [
    "STANDARD_GRID",
    "CoverageCurve",
    "DegreePair",
    "DomainError",
    "EstimationInterval",
    "GridSpec",
    "MethodKind",
    "MonteCarloEstimate",
    "SummaryStats",
    "chi_square_cdf",
    "chi_square_quantile",
    "coverage_at",
    "coverage_curve",
    "degrees_for",
    "lambda_interval",
    "log_gamma",
    "mc_coverage",
    "poisson_cdf",
    "poisson_pmf",
    "rate_interval",
    "regularized_lower_gamma",
    "summarize",
    "summary_table",
]
