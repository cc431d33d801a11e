"""Exact coverage probabilities of the chi-square intervals.

For a true mean ``lam`` the coverage of a method is

    sum over x of  P[X = x | lam] * 1[L(x) <= lam <= U(x)]

with X ~ Poisson(lam).  The sum is truncated at the smallest ``x`` whose
upper-tail mass is at most 1e-12.  Interval endpoints depend only on
``(method, alpha, x)`` and are cached per ``(method, alpha)``.
"""

import math
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .intervals import MethodKind, interval_endpoints
from .special_fn import DomainError, poisson_pmf, poisson_sf

__all__ = [
    "GridSpec",
    "STANDARD_GRID",
    "CoverageCurve",
    "SummaryStats",
    "MonteCarloEstimate",
    "TAIL_TOLERANCE",
    "truncation_bound",
    "endpoint_table",
    "coverage_at",
    "coverage_curve",
    "summarize",
    "summary_table",
    "mc_coverage",
    "round_half_up",
]

TAIL_TOLERANCE = 1e-12


def round_half_up(value, decimals=4):
    """Round half away from zero on the shortest decimal repr of ``value``."""
    quantum = Decimal(1).scaleb(-decimals)
    rounded = Decimal(repr(float(value))).quantize(quantum, rounding=ROUND_HALF_UP)
    return float(rounded)


@dataclass(frozen=True)
class GridSpec:
    """Grid ``lam_i = i / denominator`` for ``i = start_index .. end_index``."""

    start_index: int = 1
    end_index: int = 750
    denominator: int = 10

    def __post_init__(self):
        for name in ("start_index", "end_index", "denominator"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value or value < 1:
                raise DomainError(f"{name} must be a positive integer, got {value!r}")
        if self.start_index > self.end_index:
            raise DomainError(
                f"empty grid: start_index {self.start_index} > end_index {self.end_index}"
            )

    def __len__(self):
        return self.end_index - self.start_index + 1

    @property
    def indices(self):
        return range(self.start_index, self.end_index + 1)

    def lambdas(self):
        return np.array([i / self.denominator for i in self.indices])

    @classmethod
    def single(cls, lam_index, denominator=10):
        return cls(lam_index, lam_index, denominator)


STANDARD_GRID = GridSpec(1, 750, 10)


@dataclass(frozen=True)
class CoverageCurve:
    method: MethodKind
    alpha: float
    grid: GridSpec
    values: np.ndarray = field(repr=False)

    @property
    def lambdas(self):
        return self.grid.lambdas()

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class SummaryStats:
    mean: float
    minimum: float
    maximum: float
    argmin_lambda: float
    argmax_lambda: float

    def rounded(self, decimals=4):
        """(mean, minimum, maximum) rounded half away from zero."""
        return tuple(round_half_up(v, decimals) for v in (self.mean, self.minimum, self.maximum))


class MonteCarloEstimate(NamedTuple):
    estimate: float
    std_error: float


@lru_cache(maxsize=4096)
def truncation_bound(lam, tol=TAIL_TOLERANCE):
    """Smallest x with P[X > x] <= tol, capped at ceil(lam + 12 sqrt(lam) + 50)."""
    if not lam > 0:
        raise DomainError(f"lambda must be positive, got {lam!r}")
    cap = math.ceil(lam + 12.0 * math.sqrt(lam) + 50.0)
    tail = poisson_sf(cap, lam)
    x = cap
    while x > 0:
        # tail currently holds P[X > x]; step to P[X > x - 1]
        wider = tail + poisson_pmf(x, lam)
        if wider > tol:
            break
        tail = wider
        x -= 1
    return x


class _EndpointTable:
    """Grow-only per-x interval endpoints for one (method, alpha)."""

    def __init__(self, method, alpha):
        self.method = method
        self.alpha = alpha
        self.lower = []
        self.upper = []
        self._lock = threading.Lock()

    def ensure(self, x_max):
        with self._lock:
            for x in range(len(self.lower), x_max + 1):
                lo, hi = interval_endpoints(self.method, x, self.alpha)
                self.lower.append(lo)
                self.upper.append(hi)
        return self


@lru_cache(maxsize=None)
def _table(method, alpha):
    return _EndpointTable(method, alpha)


def endpoint_table(method, alpha, x_max):
    """Arrays ``(lower, upper)`` of lambda-interval endpoints for x = 0..x_max."""
    table = _table(MethodKind.parse(method), _check_alpha(alpha)).ensure(x_max)
    return np.array(table.lower[: x_max + 1]), np.array(table.upper[: x_max + 1])


def _check_alpha(alpha):
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie strictly between 0 and 1, got {alpha!r}")
    return float(alpha)


def _check_lambda(lam):
    if not lam > 0 or math.isinf(lam):
        raise DomainError(f"lambda must be positive and finite, got {lam!r}")
    return float(lam)


def _coverage_sum(lam, lower, upper, x_max):
    terms = []
    for x in range(x_max + 1):
        if lower[x] > lam:
            break  # lower limits increase with x
        if lam <= upper[x]:
            terms.append(poisson_pmf(x, lam))
    return min(math.fsum(terms), 1.0)


def coverage_at(method, alpha, lam):
    """Exact coverage probability of ``method`` at true mean ``lam``."""
    method = MethodKind.parse(method)
    alpha = _check_alpha(alpha)
    lam = _check_lambda(lam)
    x_max = truncation_bound(lam)
    table = _table(method, alpha).ensure(x_max)
    return _coverage_sum(lam, table.lower, table.upper, x_max)


def coverage_curve(method, alpha, grid=STANDARD_GRID, workers=1):
    """Coverage at every grid point, in grid order.

    ``workers > 1`` evaluates grid points on a thread pool; the endpoint
    table is filled beforehand so the workers only read shared state.
    """
    method = MethodKind.parse(method)
    alpha = _check_alpha(alpha)
    lams = grid.lambdas()
    bounds = [truncation_bound(float(lam)) for lam in lams]
    table = _table(method, alpha).ensure(max(bounds))
    lower, upper = table.lower, table.upper

    def one(i):
        return _coverage_sum(float(lams[i]), lower, upper, bounds[i])

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(one, range(len(lams))))
    else:
        values = [one(i) for i in range(len(lams))]
    return CoverageCurve(method, alpha, grid, np.array(values))


def summarize(curve, lambdas=None):
    """Mean, minimum and maximum of a coverage curve.

    ``curve`` is a :class:`CoverageCurve`, or a plain sequence of values when
    ``lambdas`` is given.  Ties for the extremes resolve to the first grid
    point.
    """
    if isinstance(curve, CoverageCurve):
        values = np.asarray(curve.values, dtype=float)
        lambdas = curve.lambdas
    else:
        values = np.asarray(curve, dtype=float)
        lambdas = np.asarray(lambdas if lambdas is not None else np.arange(1, len(values) + 1))
    if values.size == 0:
        raise DomainError("cannot summarize an empty coverage curve")
    if len(lambdas) != values.size:
        raise DomainError("lambdas and values differ in length")
    i_min = int(np.argmin(values))
    i_max = int(np.argmax(values))
    mean = math.fsum(values.tolist()) / values.size
    return SummaryStats(
        mean=mean,
        minimum=float(values[i_min]),
        maximum=float(values[i_max]),
        argmin_lambda=float(lambdas[i_min]),
        argmax_lambda=float(lambdas[i_max]),
    )


def summary_table(alpha, grid=STANDARD_GRID, methods=tuple(MethodKind)):
    """``{method: SummaryStats}`` in table row order."""
    return {m: summarize(coverage_curve(m, alpha, grid)) for m in methods}


def mc_coverage(method, alpha, lam, reps, seed):
    """Simulated coverage from ``reps`` seeded Poisson draws.

    Returns the covered fraction and its binomial standard error.
    """
    method = MethodKind.parse(method)
    alpha = _check_alpha(alpha)
    lam = _check_lambda(lam)
    if isinstance(reps, bool) or int(reps) != reps or reps < 1:
        raise DomainError(f"reps must be a positive integer, got {reps!r}")
    reps = int(reps)
    rng = np.random.default_rng(seed)
    draws = rng.poisson(lam, size=reps)
    lower, upper = endpoint_table(method, alpha, int(draws.max()))
    covered = (lower[draws] <= lam) & (lam <= upper[draws])
    estimate = float(np.count_nonzero(covered)) / reps
    return MonteCarloEstimate(estimate, math.sqrt(estimate * (1.0 - estimate) / reps))
