"""Closed-form divergences of an obtained vMF distribution ``y`` from a reference ``z``.

The reference is either another :class:`~vmfdiv.vmf.VonMisesFisher` or the
:class:`~vmfdiv.vmf.UniformSphere`.  Every formula is assembled from
``ln I_nu`` values; ``expm1`` is used wherever a closed form subtracts one.

Products of two vMF kernels are again a vMF kernel whose natural parameter is
``w_y kappa_y mu_y + w_z kappa_z mu_z``.  Its norm, the combined
concentration, can vanish; the formulas then use the limiting form
``I_nu(k) / k**nu -> 1 / (2**nu Gamma(nu+1))``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._validation import check_alpha
from .bessel import bessel_ratio, log_iv
from .vmf import ReferenceDistribution, UniformSphere, VonMisesFisher

# Relative threshold below which a combined concentration counts as zero.
ZERO_COMBINED_RTOL = 1e-10
# Slack allowed in the hellinger <= kl <= chi-square ordering.
ORDERING_SLACK = 1e-9
PINSKER_ALPHAS = tuple(round(0.1 * k, 1) for k in range(1, 11))

_LN2 = math.log(2.0)


class CombinedKind(str, enum.Enum):
    RENYI = "renyi"
    CHI = "chi"
    HELLINGER = "hellinger"


class Branch(str, enum.Enum):
    GENERAL = "general"
    COMBINED_ZERO = "combined_zero"
    UNIFORM_REFERENCE = "uniform_reference"


@dataclass(frozen=True, eq=False)
class CombinedConcentration:
    kind: CombinedKind
    kappa_star: float
    mu_star: Optional[np.ndarray]
    threshold: float
    alpha: Optional[float] = None

    @property
    def is_zero(self):
        return self.mu_star is None


@dataclass(frozen=True)
class DivergenceResult:
    value: float
    branch: Branch
    order: Optional[float] = None

    def __float__(self):
        return float(self.value)


@dataclass(frozen=True)
class TvBoundReport:
    """Upper bounds on the total variation distance.

    ``pinsker_bound`` is the smallest ``sqrt(d_alpha / (2 alpha))`` over
    ``alpha`` in ``PINSKER_ALPHAS`` (``d_1`` is the KL divergence) and
    ``best_tv_upper`` is the smaller of that and ``sqrt(hellinger_sq)``.
    """

    hellinger_sq: float
    kl: float
    chi_sq: float
    pinsker_bound: float
    pinsker_alpha: float
    best_tv_upper: float


def _expm1(x):
    # chi-square legitimately exceeds the double range for far-apart distributions
    try:
        return math.expm1(x)
    except OverflowError:
        return math.inf


def _check_pair(y, z):
    if not isinstance(y, VonMisesFisher):
        raise TypeError(f"obtained distribution must be a VonMisesFisher, got {type(y).__name__}")
    if not isinstance(z, (VonMisesFisher, UniformSphere)):
        raise TypeError(
            f"reference must be a VonMisesFisher or UniformSphere, got {type(z).__name__}"
        )
    if y.p != z.p:
        raise ValueError(f"dimension mismatch: obtained p={y.p}, reference p={z.p}")


def _weights(kind, alpha):
    if kind is CombinedKind.RENYI:
        return alpha, 1.0 - alpha
    if kind is CombinedKind.CHI:
        return 2.0, -1.0
    return 0.5, 0.5


def combined_concentration(kind, y: VonMisesFisher, z: VonMisesFisher, alpha=None):
    """Norm and direction of ``w_y kappa_y mu_y + w_z kappa_z mu_z``.

    The weights are ``(alpha, 1 - alpha)`` for Renyi, ``(2, -1)`` for
    chi-square and ``(1/2, 1/2)`` for Hellinger.  ``mu_star`` is ``None``
    when ``kappa_star`` is below ``1e-10 * (kappa_y + kappa_z)``.
    """
    kind = CombinedKind(kind)
    _check_pair(y, z)
    if not isinstance(z, VonMisesFisher):
        raise TypeError("combined concentration needs a vMF reference")
    if kind is CombinedKind.RENYI:
        if alpha is None:
            raise ValueError("alpha is required for the Renyi combined concentration")
        alpha = check_alpha(alpha)
    w_y, w_z = _weights(kind, alpha)
    eta = w_y * y.kappa * y.mu + w_z * z.kappa * z.mu
    if not np.all(np.isfinite(eta)):
        raise ValueError("combined natural parameter is not finite")
    kappa_star = float(np.linalg.norm(eta))
    threshold = ZERO_COMBINED_RTOL * (y.kappa + z.kappa)
    mu_star = eta / kappa_star if kappa_star > threshold else None
    return CombinedConcentration(
        kind=kind,
        kappa_star=kappa_star,
        mu_star=mu_star,
        threshold=threshold,
        alpha=alpha if kind is CombinedKind.RENYI else None,
    )


def renyi(y: VonMisesFisher, z: ReferenceDistribution, alpha) -> DivergenceResult:
    """Renyi divergence of simple order ``alpha`` in ``(0, 1)`` or ``(1, inf)``.

    Raises ``ValueError`` for ``alpha = 1``; use :func:`kl` for that limit.
    """
    alpha = check_alpha(alpha)
    _check_pair(y, z)
    nu, ky = y.nu, y.kappa
    log_iy = log_iv(nu, ky)
    lgam = math.lgamma(nu + 1.0)
    a1 = alpha - 1.0

    if isinstance(z, UniformSphere):
        log_ia = log_iv(nu, alpha * ky)
        value = (
            nu / a1 * (-a1 * _LN2 - math.log(alpha) + a1 * math.log(ky))
            + alpha / a1 * (log_ia - log_iy)
            - log_ia
            - lgam
        )
        return DivergenceResult(value, Branch.UNIFORM_REFERENCE, alpha)

    kz = z.kappa
    log_iz = log_iv(nu, kz)
    log_kappas = alpha * math.log(ky) + (1.0 - alpha) * math.log(kz)
    combined = combined_concentration(CombinedKind.RENYI, y, z, alpha)
    if combined.is_zero:
        value = (
            nu / a1 * (log_kappas - _LN2)
            + alpha / a1 * (-lgam - log_iy)
            - (-lgam - log_iz)
        )
        return DivergenceResult(value, Branch.COMBINED_ZERO, alpha)

    ka = combined.kappa_star
    log_ia = log_iv(nu, ka)
    value = (
        nu / a1 * (log_kappas - math.log(ka))
        + alpha / a1 * (log_ia - log_iy)
        - (log_ia - log_iz)
    )
    return DivergenceResult(value, Branch.GENERAL, alpha)


def chi_square(y: VonMisesFisher, z: ReferenceDistribution) -> DivergenceResult:
    """Chi-square distance ``int f_y**2 / f_z - 1``.

    The zero-combined-concentration case (``kappa_z = 2 kappa_y``, equal
    mean directions) and the uniform reference give the same value.
    """
    _check_pair(y, z)
    nu, ky = y.nu, y.kappa
    log_iy = log_iv(nu, ky)
    lgam = math.lgamma(nu + 1.0)

    if isinstance(z, UniformSphere):
        log_ratio = (
            nu * math.log(ky) + log_iv(nu, 2.0 * ky) - 2.0 * nu * _LN2 - lgam - 2.0 * log_iy
        )
        return DivergenceResult(_expm1(log_ratio), Branch.UNIFORM_REFERENCE)

    kz = z.kappa
    log_iz = log_iv(nu, kz)
    combined = combined_concentration(CombinedKind.CHI, y, z)
    base = 2.0 * nu * math.log(ky) - nu * math.log(kz) + log_iz - 2.0 * log_iy
    if combined.is_zero:
        log_ratio = base - nu * _LN2 - lgam
        return DivergenceResult(_expm1(log_ratio), Branch.COMBINED_ZERO)
    kc = combined.kappa_star
    log_ratio = base + log_iv(nu, kc) - nu * math.log(kc)
    return DivergenceResult(_expm1(log_ratio), Branch.GENERAL)


def hellinger_sq(y: VonMisesFisher, z: ReferenceDistribution) -> DivergenceResult:
    """Squared Hellinger distance ``int (sqrt f_y - sqrt f_z)**2``, in ``[0, 2]``."""
    _check_pair(y, z)
    nu, ky = y.nu, y.kappa
    log_iy = log_iv(nu, ky)
    lgam = math.lgamma(nu + 1.0)

    if isinstance(z, UniformSphere):
        log_bc = (
            1.5 * nu * _LN2
            + log_iv(nu, 0.5 * ky)
            + 0.5 * lgam
            - 0.5 * nu * math.log(ky)
            - 0.5 * log_iy
        )
        return DivergenceResult(-2.0 * math.expm1(log_bc), Branch.UNIFORM_REFERENCE)

    kz = z.kappa
    log_iz = log_iv(nu, kz)
    combined = combined_concentration(CombinedKind.HELLINGER, y, z)
    base = 0.5 * nu * (math.log(ky) + math.log(kz)) - 0.5 * (log_iy + log_iz)
    if combined.is_zero:
        log_bc = base - nu * _LN2 - lgam
        return DivergenceResult(-2.0 * math.expm1(log_bc), Branch.COMBINED_ZERO)
    kh = combined.kappa_star
    log_bc = base + log_iv(nu, kh) - nu * math.log(kh)
    return DivergenceResult(-2.0 * math.expm1(log_bc), Branch.GENERAL)


def kl(y: VonMisesFisher, z: ReferenceDistribution) -> DivergenceResult:
    """Kullback-Leibler divergence of ``y`` from ``z``."""
    _check_pair(y, z)
    nu, ky = y.nu, y.kappa
    r = bessel_ratio(nu, ky)
    log_iy = log_iv(nu, ky)
    if isinstance(z, UniformSphere):
        value = nu * math.log(0.5 * ky) - log_iy - math.lgamma(nu + 1.0) + r * ky
        return DivergenceResult(value, Branch.UNIFORM_REFERENCE)
    kz = z.kappa
    cos = float(z.mu @ y.mu)
    value = nu * math.log(ky / kz) - (log_iy - log_iv(nu, kz)) + r * (ky - kz * cos)
    return DivergenceResult(value, Branch.GENERAL)


def tv_bounds(y: VonMisesFisher, z: ReferenceDistribution) -> TvBoundReport:
    """Hellinger, KL, chi-square and the Renyi-Pinsker bounds on total variation.

    Raises ``ArithmeticError`` if ``hellinger_sq <= kl <= chi_sq`` fails by
    more than the numerical slack.
    """
    h2 = hellinger_sq(y, z).value
    d_kl = kl(y, z).value
    chi = chi_square(y, z).value
    for lo, hi, names in ((h2, d_kl, "hellinger_sq <= kl"), (d_kl, chi, "kl <= chi_sq")):
        if lo > hi + ORDERING_SLACK * (1.0 + abs(hi)):
            raise ArithmeticError(f"divergence ordering violated: {names} ({lo!r} > {hi!r})")

    best_alpha, pinsker = None, math.inf
    for alpha in PINSKER_ALPHAS:
        d = d_kl if alpha == 1.0 else renyi(y, z, alpha).value
        bound = math.sqrt(max(d, 0.0) / (2.0 * alpha))
        if bound < pinsker:
            best_alpha, pinsker = alpha, bound
    return TvBoundReport(
        hellinger_sq=h2,
        kl=d_kl,
        chi_sq=chi,
        pinsker_bound=pinsker,
        pinsker_alpha=best_alpha,
        best_tv_upper=min(math.sqrt(max(h2, 0.0)), pinsker),
    )
