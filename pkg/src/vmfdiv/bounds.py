"""Amos-type bounds on ``ln I_nu`` and on ``I_{nu+1}/I_nu``, plus large-kappa envelopes.

With ``c_under = nu + 1/2`` and ``c_over = nu + 3/2`` the ratio satisfies

    kappa / (c_under + sqrt(kappa**2 + c_over**2))
        <= I_{nu+1}(kappa) / I_nu(kappa)
        <= kappa / (c_under + sqrt(kappa**2 + c_under**2)).

Integrating ``d/dk ln I_nu(k) = nu/k + r_nu(k)`` between two concentrations
turns this into a sandwich on ``ln I_nu``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._validation import check_nonnegative, check_positive
from .bessel import log_iv

# hankel_circular_variance requires kappa >= this * (nu + 1)**2.
HANKEL_VALIDITY_FACTOR = 10.0


@dataclass(frozen=True)
class BoundPair:
    lower: float
    upper: float
    c_under: float
    c_over: float

    def contains(self, value, slack=0.0):
        return self.lower - slack <= value <= self.upper + slack

    @property
    def width(self):
        return self.upper - self.lower


def _constants(nu):
    return nu + 0.5, nu + 1.5


def _log_bessel_increment(c_under, c, ky, kz):
    """Integral of ``k / (c_under + sqrt(k**2 + c**2))`` from ``kz`` to ``ky``."""
    sy = math.hypot(ky, c)
    sz = math.hypot(kz, c)
    return c_under * math.log((c_under + sz) / (c_under + sy)) + (ky - kz) * (ky + kz) / (sy + sz)


def amos_log_bessel_bounds(nu, kappa_y, kappa_z) -> BoundPair:
    """Bounds on ``ln I_nu(kappa_y)`` anchored at ``ln I_nu(kappa_z)``.

    For ``kappa_y >= kappa_z`` the lower formula uses ``c_over`` inside the
    square roots and the upper one ``c_under``.  When ``kappa_z > kappa_y``
    the two formulas trade places, so the pair is returned swapped.
    """
    nu = check_nonnegative(nu, "nu")
    ky = check_positive(kappa_y, "kappa_y")
    kz = check_positive(kappa_z, "kappa_z")
    c_under, c_over = _constants(nu)
    anchor = log_iv(nu, kz) + nu * math.log(ky / kz)
    low = anchor + _log_bessel_increment(c_under, c_over, ky, kz)
    high = anchor + _log_bessel_increment(c_under, c_under, ky, kz)
    if kz > ky:
        low, high = high, low
    return BoundPair(low, high, c_under, c_over)


def amos_log_bessel_bounds_uniform(nu, kappa) -> BoundPair:
    """The ``kappa_z -> 0`` form of :func:`amos_log_bessel_bounds`."""
    nu = check_nonnegative(nu, "nu")
    k = check_positive(kappa, "kappa")
    c_under, c_over = _constants(nu)
    common = 0.5 * math.log(2.0 / k) - math.lgamma(nu + 1.0)
    s_over = math.hypot(k, c_over)
    s_under = math.hypot(k, c_under)
    low = (
        common
        + c_under * math.log((k * nu + k) / (c_under + s_over))
        + k * k / (c_over + s_over)
    )
    high = (
        common
        + c_under * math.log((k * nu + 0.5 * k) / (c_under + s_under))
        + k * k / (c_under + s_under)
    )
    return BoundPair(low, high, c_under, c_over)


def amos_ratio_bounds(nu, kappa) -> BoundPair:
    """Bracket for the mean resultant length ``r_nu(kappa)``."""
    nu = check_nonnegative(nu, "nu")
    k = check_positive(kappa, "kappa")
    c_under, c_over = _constants(nu)
    return BoundPair(
        k / (c_under + math.hypot(k, c_over)),
        k / (c_under + math.hypot(k, c_under)),
        c_under,
        c_over,
    )


def lf_envelopes(nu, kappa) -> BoundPair:
    """Linear-minus-half-log envelopes of the uniform-anchored bounds.

    ``lower = k - ln(k)/2 - nu ln 2 - ln Gamma(nu+1) - c_over`` and
    ``upper = k - ln(k)/2 + ln(2)/2 - ln Gamma(nu+1) + c_under ln(c_under)``.
    """
    nu = check_nonnegative(nu, "nu")
    k = check_positive(kappa, "kappa")
    c_under, c_over = _constants(nu)
    lgam = math.lgamma(nu + 1.0)
    head = k - 0.5 * math.log(k)
    return BoundPair(
        head - nu * math.log(2.0) - lgam - c_over,
        head + 0.5 * math.log(2.0) - lgam + c_under * math.log(c_under),
        c_under,
        c_over,
    )


def hankel_circular_variance(nu, kappa):
    """Leading-order Hankel approximation ``(nu + 1/2) / (kappa - nu**2/2 + 1/8)`` of ``1 - r_nu``.

    Only defined for ``kappa >= 10 (nu + 1)**2``.
    """
    nu = check_nonnegative(nu, "nu")
    k = check_positive(kappa, "kappa")
    minimum = HANKEL_VALIDITY_FACTOR * (nu + 1.0) ** 2
    if k < minimum:
        raise ValueError(
            f"Hankel expansion needs kappa >= {minimum:g} for nu={nu:g}, got {k!r}"
        )
    return (nu + 0.5) / (k - 0.5 * nu * nu + 0.125)
