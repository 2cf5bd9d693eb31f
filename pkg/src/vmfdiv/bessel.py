"""Modified Bessel function of the first kind, evaluated in the log domain.

Two evaluation paths are used:

* the ascending power series
  ``I_nu(z) = (z/2)**nu * sum_k (z/2)**(2k) / (k! Gamma(nu+k+1))``
  for ``z <= max(30, 2*nu)``;
* the Hankel (Poincare) expansion
  ``I_nu(z) ~ exp(z) / sqrt(2 pi z) * sum_j (-1)**j a_j(nu) / z**j``
  truncated at its smallest term, for larger ``z``.  For half-integer
  orders the expansion terminates and, together with its exponentially
  small companion, is exact.

If the asymptotic expansion cannot reach double precision (large orders
at moderate arguments) the series is used instead, with its term cap
raised to what the argument needs.

Nothing here forms ``I_nu(z)`` itself, so arguments up to ``1e8`` and
beyond are safe.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from ._validation import check_nonnegative, check_positive

EPS = 2.220446049250313e-16

SERIES_MAX_TERMS = 500
SERIES_RTOL = 1e-17
# Lower bound of the asymptotic region; raised to 2*nu for large orders.
ASYMPTOTIC_MIN_Z = 30.0
# Largest tolerated |smallest term| of the truncated Hankel sum.
ASYMPTOTIC_RTOL = 1e-16
# The ratio switches from the continued fraction to a Hankel-sum quotient above this.
RATIO_ASYMPTOTIC_MIN = 50.0
CF_MAX_ITER = 100_000

_RESCALE = 1e280
_LOG_RESCALE = math.log(_RESCALE)


class BesselMethod(str, enum.Enum):
    SERIES = "series"
    ASYMPTOTIC = "asymptotic"
    CLOSED_FORM_HALF_INTEGER = "closed_form_half_integer"


@dataclass(frozen=True)
class LogBesselValue:
    """``ln I_nu(z)`` with the path that produced it.

    ``abs_log_error_estimate`` bounds the absolute error of ``log_value``
    as claimed by that path (rounding plus truncation).
    """

    log_value: float
    method: BesselMethod
    abs_log_error_estimate: float


@dataclass(frozen=True)
class HankelSeries:
    order: float
    coefficients: tuple[float, ...]

    def __len__(self):
        return len(self.coefficients)


def log_gamma(x):
    """Natural log of the gamma function for ``x > 0``."""
    x = check_positive(x, "x")
    return math.lgamma(x)


def _is_half_integer(nu):
    return (2.0 * nu) % 2.0 == 1.0


def _series(nu, z, max_terms=None):
    if z == 0.0:
        return (0.0 if nu == 0.0 else -math.inf), 0
    q = 0.25 * z * z
    if max_terms is None:
        max_terms = SERIES_MAX_TERMS
    term = 1.0
    head = 1.0  # the k = 0 term, rescaled alongside the tail
    tail = 0.0
    shift = 0.0
    k = 0
    for k in range(1, max_terms + 1):
        term *= q / (k * (nu + k))
        tail += term
        if term < SERIES_RTOL * (head + tail):
            break
        if tail > _RESCALE:
            term /= _RESCALE
            tail /= _RESCALE
            head /= _RESCALE
            shift += _LOG_RESCALE
    else:
        raise ArithmeticError(
            f"Bessel series did not converge in {max_terms} terms (nu={nu}, z={z})"
        )
    log_sum = math.log1p(tail) if head == 1.0 else math.log(head + tail)
    prefix = nu * math.log(0.5 * z) - math.lgamma(nu + 1.0) if nu > 0 else 0.0
    return prefix + shift + log_sum, k


def _series_term_cap(z):
    # The terms peak near k = z/2 and then decay like a Gaussian of width ~sqrt(z).
    return max(SERIES_MAX_TERMS, int(z + 12.0 * math.sqrt(z)) + 50)


def _hankel_sum(nu, z, sign=-1.0):
    """Sum of ``sign**j a_j(nu) / z**j`` truncated at the smallest term.

    Returns ``(value, abs_truncation_error, terminated)`` where ``terminated``
    is true when the series ends exactly (half-integer order).
    """
    mu4 = 4.0 * nu * nu
    total = 1.0
    term = 1.0
    j = 1
    while True:
        factor = (mu4 - (2 * j - 1) ** 2) / (8.0 * j * z)
        nxt = term * factor * sign
        if nxt == 0.0:
            return total, 0.0, True
        if abs(nxt) >= abs(term):
            return total, abs(term), False
        total += nxt
        if abs(nxt) < 0.25 * EPS * abs(total):
            return total, abs(nxt), False
        term = nxt
        j += 1


def _asymptotic(nu, z):
    """Hankel-expansion value of ``ln I_nu(z)`` and a relative error bound."""
    s_minus, err, terminated = _hankel_sum(nu, z, -1.0)
    base = z - 0.5 * math.log(2.0 * math.pi * z)
    if terminated:
        # I_{n+1/2}(z) = (e^z S_- - (-1)^n e^{-z} S_+) / sqrt(2 pi z), exactly.
        s_plus, _, _ = _hankel_sum(nu, z, 1.0)
        n = int(round(nu - 0.5))
        correction = -((-1) ** n) * math.exp(-2.0 * z) * s_plus / s_minus
        return base + math.log(s_minus) + math.log1p(correction), 0.0, True
    if s_minus <= 0.0:
        return math.nan, math.inf, False
    rel_err = err / s_minus + math.exp(-2.0 * z)
    return base + math.log(s_minus), rel_err, False


def log_bessel_i(nu, z) -> LogBesselValue:
    """Evaluate ``ln I_nu(z)`` for real ``nu >= 0`` and ``z >= 0``.

    Parameters
    ----------
    nu : float
        Order, ``nu >= 0``.
    z : float
        Argument, ``z >= 0``.

    Returns
    -------
    LogBesselValue
        ``log_value`` is ``-inf`` at ``z = 0`` for ``nu > 0`` and ``0`` for
        ``nu = 0``.

    Examples
    --------
    >>> round(log_bessel_i(0.0, 1.0).log_value, 10)
    0.2359143585
    """
    nu = check_nonnegative(nu, "nu")
    z = check_nonnegative(z, "z")
    if z > max(ASYMPTOTIC_MIN_Z, 2.0 * nu):
        value, rel_err, exact = _asymptotic(nu, z)
        rounding = EPS * (abs(z) + 4.0)
        if exact:
            return LogBesselValue(value, BesselMethod.CLOSED_FORM_HALF_INTEGER, rounding)
        if rel_err <= ASYMPTOTIC_RTOL:
            return LogBesselValue(value, BesselMethod.ASYMPTOTIC, rel_err + rounding)
        value, n_terms = _series(nu, z, _series_term_cap(z))
    else:
        value, n_terms = _series(nu, z)
    if math.isinf(value):
        return LogBesselValue(value, BesselMethod.SERIES, 0.0)
    return LogBesselValue(value, BesselMethod.SERIES, EPS * (n_terms + 2.0 + abs(value)))


def log_iv(nu, z):
    """Shorthand for ``log_bessel_i(nu, z).log_value``."""
    return log_bessel_i(nu, z).log_value


def log_iv_over_power(nu, z):
    """``ln(I_nu(z) / z**nu)``, continuous at ``z = 0``.

    At ``z = 0`` this is the limiting value ``-nu ln 2 - ln Gamma(nu+1)``.
    """
    nu = check_nonnegative(nu, "nu")
    z = check_nonnegative(z, "z")
    if z == 0.0:
        return -nu * math.log(2.0) - math.lgamma(nu + 1.0)
    return log_iv(nu, z) - nu * math.log(z)


def _ratio_continued_fraction(nu, x):
    # Gauss continued fraction I_{nu+1}/I_nu = 1/(b_1 + 1/(b_2 + ...)), b_j = 2(nu+j)/x,
    # evaluated with the modified Lentz algorithm.
    tiny = 1e-300
    f = tiny
    c = f
    d = 0.0
    for j in range(1, CF_MAX_ITER + 1):
        b = 2.0 * (nu + j) / x
        d = b + d
        if d == 0.0:
            d = tiny
        c = b + 1.0 / c
        if c == 0.0:
            c = tiny
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < 0.5 * EPS:
            return f
    raise ArithmeticError(f"Bessel ratio continued fraction did not converge (nu={nu}, x={x})")


def bessel_ratio(nu, kappa):
    """Mean resultant length ``r_nu(kappa) = I_{nu+1}(kappa) / I_nu(kappa)``.

    For ``kappa <= 50`` (and whenever the asymptotic sums are not accurate
    to double precision) the Gauss continued fraction is evaluated with the
    modified Lentz algorithm.  Above that the quotient of the two truncated
    Hankel sums is taken, so the common ``exp(kappa)/sqrt(2 pi kappa)``
    factor cancels exactly instead of through a difference of logs.
    """
    nu = check_nonnegative(nu, "nu")
    kappa = check_positive(kappa, "kappa")
    if kappa > max(RATIO_ASYMPTOTIC_MIN, 2.0 * nu + 2.0):
        s_nu, err_nu, _ = _hankel_sum(nu, kappa)
        s_up, err_up, _ = _hankel_sum(nu + 1.0, kappa)
        if s_nu > 0 and s_up > 0 and max(err_nu / s_nu, err_up / s_up) <= ASYMPTOTIC_RTOL:
            return s_up / s_nu
    return _ratio_continued_fraction(nu, kappa)


def hankel_coefficients(nu, n) -> HankelSeries:
    """First ``n`` coefficients ``a_0(nu) .. a_{n-1}(nu)`` of the Hankel expansion.

    ``a_j(nu) = prod_{i=1..j} (4 nu**2 - (2i - 1)**2) / (j! 8**j)``, with
    ``a_0 = 1``.  For half-integer ``nu`` every coefficient beyond
    ``j = nu - 1/2`` vanishes.
    """
    nu = check_nonnegative(nu, "nu")
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    mu4 = 4.0 * nu * nu
    coefficients = []
    for j in range(int(n)):
        numerator = 1.0
        for i in range(1, j + 1):
            numerator *= mu4 - (2 * i - 1) ** 2
        coefficients.append(numerator / (math.factorial(j) * 8.0**j))
    return HankelSeries(order=nu, coefficients=tuple(coefficients))


def log_bessel_hankel(nu, z, n):
    """``ln I_nu(z)`` from the first ``n`` terms of the Hankel expansion."""
    z = check_positive(z, "z")
    series = hankel_coefficients(nu, n)
    total = math.fsum((-1) ** j * a / z**j for j, a in enumerate(series.coefficients))
    if total <= 0:
        raise ArithmeticError(f"{n}-term Hankel sum is not positive at z={z}; z is too small")
    return z - 0.5 * math.log(2.0 * math.pi * z) + math.log(total)
