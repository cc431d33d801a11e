"""Special functions for the chi-square interval and coverage calculations.

Everything here is a pure function of float/int arguments.  Invalid
arguments raise :class:`DomainError` (a ``ValueError``).

The Poisson probabilities and the incomplete-gamma prefactor share one
kernel, :func:`_poisson_density`, which uses the saddle-point form
``exp(-stirlerr(s) - bd0(s, y)) / sqrt(2*pi*s)`` so that large counts keep
full relative precision instead of cancelling three large logarithms.
"""

import math
from statistics import NormalDist

__all__ = [
    "DomainError",
    "log_gamma",
    "regularized_lower_gamma",
    "regularized_upper_gamma",
    "chi_square_cdf",
    "chi_square_sf",
    "chi_square_pdf",
    "chi_square_quantile",
    "poisson_pmf",
    "poisson_cdf",
    "poisson_sf",
]

_LN_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
_EPS = 1e-16
_TINY = 1e-300
_MAX_ITER = 100_000

# Stirling series coefficients B_{2k} / (2k (2k-1))
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
)


class DomainError(ValueError):
    """Argument outside the domain of a special function."""


def _require_dof(f):
    if isinstance(f, bool) or int(f) != f or f < 1:
        raise DomainError(f"degrees of freedom must be an integer >= 1, got {f!r}")
    return int(f)


def _require_count(x):
    if isinstance(x, bool) or int(x) != x or x < 0:
        raise DomainError(f"count must be a nonnegative integer, got {x!r}")
    return int(x)


def _require_rate(lam):
    if not lam > 0 or math.isinf(lam):
        raise DomainError(f"Poisson mean must be positive and finite, got {lam!r}")
    return float(lam)


def log_gamma(z):
    """Natural log of the gamma function for ``z > 0``.

    Uses the Stirling series for ``z >= 10`` and the upward recurrence
    ``Gamma(z + 1) = z Gamma(z)`` below that.
    """
    if not z > 0 or math.isinf(z):
        raise DomainError(f"log_gamma requires a finite z > 0, got {z!r}")
    z = float(z)
    if z == 1.0 or z == 2.0:
        return 0.0
    shift = 1.0
    while z < 10.0:
        shift *= z
        z += 1.0
    inv = 1.0 / z
    inv2 = inv * inv
    series = 0.0
    for coef in reversed(_STIRLING):
        series = series * inv2 + coef
    value = (z - 0.5) * math.log(z) - z + _LN_SQRT_2PI + series * inv
    return value - math.log(shift)


def _stirlerr(s):
    """log Gamma(s + 1) - (s + 1/2) log s + s - log sqrt(2 pi)."""
    if s <= 15.0:
        return log_gamma(s + 1.0) - (s + 0.5) * math.log(s) + s - _LN_SQRT_2PI
    s2 = s * s
    if s > 500.0:
        return (_STIRLING[0] + _STIRLING[1] / s2) / s
    if s > 80.0:
        return (_STIRLING[0] + (_STIRLING[1] + _STIRLING[2] / s2) / s2) / s
    if s > 35.0:
        return (_STIRLING[0] + (_STIRLING[1] + (_STIRLING[2] + _STIRLING[3] / s2) / s2) / s2) / s
    return (
        _STIRLING[0]
        + (_STIRLING[1] + (_STIRLING[2] + (_STIRLING[3] + _STIRLING[4] / s2) / s2) / s2) / s2
    ) / s


def _bd0(s, y):
    """Deviance term s log(s / y) + y - s, accurate when s is close to y."""
    diff = s - y
    if abs(diff) < 0.1 * (s + y):
        v = diff / (s + y)
        total = diff * v
        ej = 2.0 * s * v
        v2 = v * v
        j = 1
        while True:
            ej *= v2
            nxt = total + ej / (2 * j + 1)
            if nxt == total:
                return nxt
            total = nxt
            j += 1
    return s * math.log(s / y) + y - s


def _poisson_density(s, y):
    """y**s * exp(-y) / Gamma(s + 1) for real s >= 0, y >= 0."""
    if y == 0.0:
        return 1.0 if s == 0 else 0.0
    if s == 0:
        return math.exp(-y)
    return math.exp(-_stirlerr(s) - _bd0(s, y)) / math.sqrt(2.0 * math.pi * s)


def _gamma_series(s, y):
    # P(s, y) = D(s, y) * sum_n y**n / ((s+1)...(s+n))
    term = 1.0
    total = 1.0
    n = 1
    while n < _MAX_ITER:
        term *= y / (s + n)
        total += term
        if term < total * _EPS:
            return _poisson_density(s, y) * total
        n += 1
    raise ArithmeticError(f"incomplete gamma series failed to converge (s={s}, y={y})")


def _gamma_continued_fraction(s, y):
    # Q(s, y) by modified Lentz on the Legendre continued fraction
    b = y + 1.0 - s
    c = 1.0 / _TINY
    d = 1.0 / b if b != 0 else 1.0 / _TINY
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return s * _poisson_density(s, y) * h
    raise ArithmeticError(f"incomplete gamma continued fraction failed (s={s}, y={y})")


def _check_gamma_args(s, y):
    if not s > 0 or math.isinf(s):
        raise DomainError(f"shape must be positive and finite, got {s!r}")
    if not y >= 0:
        raise DomainError(f"argument must be nonnegative, got {y!r}")


def regularized_lower_gamma(s, y):
    """P(s, y) = gamma(s, y) / Gamma(s)."""
    _check_gamma_args(s, y)
    s, y = float(s), float(y)
    if y == 0.0:
        return 0.0
    if math.isinf(y):
        return 1.0
    if y < s + 1.0:
        return min(_gamma_series(s, y), 1.0)
    return max(1.0 - _gamma_continued_fraction(s, y), 0.0)


def regularized_upper_gamma(s, y):
    """Q(s, y) = 1 - P(s, y), computed directly on the side where it is small."""
    _check_gamma_args(s, y)
    s, y = float(s), float(y)
    if y == 0.0:
        return 1.0
    if math.isinf(y):
        return 0.0
    if y < s + 1.0:
        return max(1.0 - _gamma_series(s, y), 0.0)
    return min(_gamma_continued_fraction(s, y), 1.0)


def chi_square_cdf(q, f):
    if not q >= 0:
        raise DomainError(f"chi-square argument must be nonnegative, got {q!r}")
    f = _require_dof(f)
    return regularized_lower_gamma(0.5 * f, 0.5 * q)


def chi_square_sf(q, f):
    if not q >= 0:
        raise DomainError(f"chi-square argument must be nonnegative, got {q!r}")
    f = _require_dof(f)
    return regularized_upper_gamma(0.5 * f, 0.5 * q)


def chi_square_pdf(q, f):
    if not q >= 0:
        raise DomainError(f"chi-square argument must be nonnegative, got {q!r}")
    f = _require_dof(f)
    if q == 0.0:
        return {1: math.inf, 2: 0.5}.get(f, 0.0)
    s = 0.5 * f
    y = 0.5 * q
    return _poisson_density(s, y) * s / (2.0 * y)


def _initial_quantile(p, f):
    # Wilson-Hilferty cube-root normal approximation
    z = NormalDist().inv_cdf(p)
    k = 2.0 / (9.0 * f)
    guess = f * (1.0 - k + z * math.sqrt(k)) ** 3
    if guess > 0.0 and not (p < 0.05 and f <= 2):
        return guess
    # lower tail: P(s, y) ~ y**s / Gamma(s + 1)
    s = 0.5 * f
    return 2.0 * math.exp((math.log(p) + log_gamma(s + 1.0)) / s)


def chi_square_quantile(p, f):
    """Inverse of :func:`chi_square_cdf` in its first argument.

    Bracketed Newton iteration from a Wilson-Hilferty start; any Newton
    step that leaves the bracket is replaced by bisection.  Above the
    median the residual is taken on the upper tail so that quantiles near
    ``p = 1`` do not lose precision.
    """
    f = _require_dof(f)
    if not 0.0 <= p < 1.0:
        raise DomainError(f"probability must lie in [0, 1), got {p!r}")
    if p == 0.0:
        return 0.0
    p = float(p)
    s = 0.5 * f
    upper_tail = p > 0.5
    tail = 1.0 - p

    def residual(q):
        if upper_tail:
            return tail - regularized_upper_gamma(s, 0.5 * q)
        return regularized_lower_gamma(s, 0.5 * q) - p

    lo, hi = 0.0, max(2.0 * f, 4.0)
    while residual(hi) < 0.0:
        lo, hi = hi, 2.0 * hi

    q = _initial_quantile(p, f)
    if not lo < q < hi:
        q = 0.5 * (lo + hi)
    for _ in range(500):
        r = residual(q)
        if r == 0.0:
            return q
        if r < 0.0:
            lo = q
        else:
            hi = q
        if hi - lo <= 4.0 * math.ulp(hi):
            break
        dens = chi_square_pdf(q, f)
        step = r / dens if 0.0 < dens < math.inf else math.nan
        nxt = q - step
        if not lo < nxt < hi:
            nxt = 0.5 * (lo + hi)
        if abs(nxt - q) <= 2.0 * math.ulp(q):
            return nxt
        q = nxt
    return q


def poisson_pmf(x, lam):
    """P[X = x] for X ~ Poisson(lam)."""
    x = _require_count(x)
    lam = _require_rate(lam)
    return _poisson_density(x, lam)


def _lower_sum(x, lam):
    # sum_{k <= x}, x < lam: terms shrink going down
    term = _poisson_density(x, lam)
    total = term
    k = x
    while k > 0 and term > total * 1e-17:
        term *= k / lam
        total += term
        k -= 1
    return total


def _upper_sum(x, lam):
    # sum_{k > x}, x + 1 > lam: terms shrink going up
    k = x + 1
    term = _poisson_density(k, lam)
    total = term
    while term > total * 1e-17:
        k += 1
        term *= lam / k
        total += term
    return total


def poisson_cdf(x, lam):
    """P[X <= x] for X ~ Poisson(lam)."""
    x = _require_count(x)
    lam = _require_rate(lam)
    if x < lam:
        return min(_lower_sum(x, lam), 1.0)
    return max(1.0 - _upper_sum(x, lam), 0.0)


def poisson_sf(x, lam):
    """P[X > x] for X ~ Poisson(lam)."""
    x = _require_count(x)
    lam = _require_rate(lam)
    if x + 1 > lam:
        return min(_upper_sum(x, lam), 1.0)
    return max(1.0 - _lower_sum(x, lam), 0.0)
