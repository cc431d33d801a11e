"""Chi-square estimation intervals for a Poisson mean and mean rate.

Every method produces an interval of the form

    lower = chi2_quantile(alpha / 2, f1) / 2
    upper = chi2_quantile(1 - alpha / 2, f2) / 2

where the degrees of freedom ``(f1, f2)`` are a method-specific function of
the observed count ``x``.  Dividing both ends by the exposure ``t`` gives
the interval for the rate ``nu = lambda / t``.
"""

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

from .special_fn import DomainError, chi_square_quantile

__all__ = [
    "MethodKind",
    "DegreePair",
    "EstimationInterval",
    "degrees_for",
    "lambda_interval",
    "rate_interval",
    "interval_endpoints",
]


class MethodKind(enum.Enum):
    """The six degree-of-freedom rules; values are the short CLI names."""

    USUAL = "usual"
    STRUCTURAL_JEFFREYS_SCALE = "structural"
    BAYES_UNIFORM = "uniform"
    JEFFREYS_POISSON = "jeffreys"
    ADJUSTED_RAISE_F1 = "raise-f1"
    ADJUSTED_DROP_F2 = "drop-f2"

    @classmethod
    def parse(cls, name):
        """Accept a MethodKind, its short name, or its member name."""
        if isinstance(name, cls):
            return name
        try:
            return cls(name)
        except ValueError:
            pass
        try:
            return cls[str(name).upper().replace("-", "_")]
        except KeyError:
            choices = ", ".join(m.value for m in cls)
            raise ValueError(f"unknown method {name!r}; choose from {choices}") from None

    @property
    def offsets(self):
        """(f1 - 2x, f2 - 2x)."""
        return _OFFSETS[self]

    @property
    def rule(self):
        """Human-readable rule, e.g. ``('2x', '2x+2')``."""
        return tuple("2x" if d == 0 else f"2x+{d}" for d in self.offsets)


_OFFSETS = {
    MethodKind.USUAL: (0, 2),
    MethodKind.STRUCTURAL_JEFFREYS_SCALE: (0, 0),
    MethodKind.BAYES_UNIFORM: (2, 2),
    MethodKind.JEFFREYS_POISSON: (1, 1),
    MethodKind.ADJUSTED_RAISE_F1: (1, 2),
    MethodKind.ADJUSTED_DROP_F2: (0, 1),
}


class DegreePair(NamedTuple):
    f1: int
    f2: int


@dataclass(frozen=True)
class EstimationInterval:
    """A closed interval ``[lower, upper]`` for ``lambda`` or for the rate."""

    lower: float
    upper: float
    target: str  # "lambda" or "rate"
    exposure_t: float
    alpha: float
    method: MethodKind
    x_observed: int

    @property
    def width(self):
        return self.upper - self.lower

    @property
    def level(self):
        return 1.0 - self.alpha

    def __contains__(self, value):
        return self.lower <= value <= self.upper


def _check_count(x):
    if isinstance(x, bool) or int(x) != x or x < 0:
        raise DomainError(f"observed count must be a nonnegative integer, got {x!r}")
    return int(x)


def _check_alpha(alpha):
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie strictly between 0 and 1, got {alpha!r}")
    return float(alpha)


def degrees_for(method, x):
    """Raw ``(f1, f2)`` for ``method`` at count ``x``, before any x = 0 fix-up."""
    method = MethodKind.parse(method)
    x = _check_count(x)
    d1, d2 = method.offsets
    return DegreePair(2 * x + d1, 2 * x + d2)


def interval_endpoints(method, x, alpha):
    """``(lower, upper)`` for lambda as plain floats.

    A zero ``f1`` puts the lower limit at 0; a zero ``f2`` is replaced by 1.
    """
    f1, f2 = degrees_for(method, x)
    alpha = _check_alpha(alpha)
    lower = 0.0 if f1 == 0 else 0.5 * chi_square_quantile(0.5 * alpha, f1)
    upper = 0.5 * chi_square_quantile(1.0 - 0.5 * alpha, max(f2, 1))
    return lower, upper


def lambda_interval(method, x, alpha=0.05):
    method = MethodKind.parse(method)
    lower, upper = interval_endpoints(method, x, alpha)
    return EstimationInterval(
        lower=lower,
        upper=upper,
        target="lambda",
        exposure_t=1.0,
        alpha=float(alpha),
        method=method,
        x_observed=int(x),
    )


def rate_interval(method, x, t, alpha=0.05):
    """Interval for the mean rate given ``x`` events over exposure ``t``."""
    if not t > 0 or math.isinf(t):
        raise DomainError(f"exposure t must be positive and finite, got {t!r}")
    lam = lambda_interval(method, x, alpha)
    t = float(t)
    return EstimationInterval(
        lower=lam.lower / t,
        upper=lam.upper / t,
        target="rate",
        exposure_t=t,
        alpha=lam.alpha,
        method=lam.method,
        x_observed=lam.x_observed,
    )
