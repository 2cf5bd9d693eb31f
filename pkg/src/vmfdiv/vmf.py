"""The von Mises-Fisher distribution on the unit hypersphere in R^p.

The density with respect to surface measure is

    f(x; kappa, mu) = exp(kappa mu'x) / C_nu(kappa),
    C_nu(kappa) = (2 pi)**(nu+1) I_nu(kappa) / kappa**nu,   nu = p/2 - 1.

The uniform distribution on the sphere is the ``kappa -> 0`` limit.  It is
kept as its own type, ``UniformSphere``, rather than as ``kappa = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from ._validation import as_vector, check_dimension, check_positive
from .bessel import bessel_ratio, log_iv

# Inputs that are meant to be unit vectors may be off by this much.
UNIT_NORM_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class VonMisesFisher:
    """A vMF distribution with concentration ``kappa > 0`` and mean direction ``mu``.

    Build instances with :func:`make_vmf`, which validates and normalizes.
    """

    p: int
    kappa: float
    mu: np.ndarray

    @property
    def nu(self):
        return self.p / 2.0 - 1.0

    def log_normalizer(self):
        return log_normalizer(self.p, self.kappa)

    def log_pdf(self, x):
        return log_pdf(self, x)

    def moments(self):
        return moments(self)

    def __repr__(self):
        mu = ", ".join(f"{m:.6g}" for m in self.mu)
        return f"VonMisesFisher(p={self.p}, kappa={self.kappa!r}, mu=[{mu}])"


@dataclass(frozen=True)
class UniformSphere:
    """Uniform distribution on the unit sphere in R^p."""

    p: int

    def __post_init__(self):
        object.__setattr__(self, "p", check_dimension(self.p))

    def log_pdf(self, x):
        x = _as_directions(x, self.p)
        return np.full(x.shape[:-1], log_uniform_density(self.p))[()]


ReferenceDistribution = Union[VonMisesFisher, UniformSphere]


@dataclass(frozen=True, eq=False)
class MomentSummary:
    mean: np.ndarray
    covariance: np.ndarray
    mean_resultant_length: float
    circular_variance: float


def make_vmf(p, kappa, mu_raw) -> VonMisesFisher:
    """Validate parameters and return a :class:`VonMisesFisher`.

    ``mu_raw`` may have any positive norm; it is rescaled to unit length.

    >>> make_vmf(3, 2.0, [0, 0, 2]).mu
    array([0., 0., 1.])
    """
    p = check_dimension(p)
    kappa = check_positive(kappa, "kappa")
    mu = as_vector(mu_raw, "mu", p)
    norm = float(np.linalg.norm(mu))
    if norm == 0.0:
        raise ValueError("mean direction must be a non-zero vector")
    mu = mu / norm
    mu.setflags(write=False)
    return VonMisesFisher(p=p, kappa=kappa, mu=mu)


def uniform_sphere(p) -> UniformSphere:
    return UniformSphere(p)


def log_normalizer(p, kappa):
    """``ln C_nu(kappa) = (nu+1) ln(2 pi) + ln I_nu(kappa) - nu ln(kappa)``."""
    p = check_dimension(p)
    kappa = check_positive(kappa, "kappa")
    nu = p / 2.0 - 1.0
    return (nu + 1.0) * math.log(2.0 * math.pi) + log_iv(nu, kappa) - nu * math.log(kappa)


def log_sphere_area(p):
    """``ln A_p`` with ``A_p = 2 pi**(p/2) / Gamma(p/2)``."""
    p = check_dimension(p)
    return math.log(2.0) + 0.5 * p * math.log(math.pi) - math.lgamma(0.5 * p)


def log_uniform_density(p):
    """Log density of the uniform distribution on the sphere, ``-ln A_p``."""
    return -log_sphere_area(p)


def _as_directions(x, p):
    x = np.asarray(x, dtype=float)
    if x.ndim == 0 or x.shape[-1] != p:
        raise ValueError(f"points must have trailing dimension {p}, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValueError("points contain non-finite entries")
    norms = np.linalg.norm(x, axis=-1)
    if np.any(np.abs(norms - 1.0) > UNIT_NORM_TOL):
        raise ValueError(f"points must be unit vectors (tolerance {UNIT_NORM_TOL})")
    return x


def log_pdf(dist: VonMisesFisher, x):
    """Log density ``kappa mu'x - ln C_nu(kappa)`` at unit vector(s) ``x``.

    ``x`` has shape ``(p,)`` or ``(..., p)``; the result drops the last axis.
    """
    x = _as_directions(x, dist.p)
    return (dist.kappa * (x @ dist.mu) - log_normalizer(dist.p, dist.kappa))[()]


def moments(dist: VonMisesFisher) -> MomentSummary:
    """Mean vector, covariance matrix, mean resultant length and circular variance."""
    p, kappa, mu = dist.p, dist.kappa, dist.mu
    r = bessel_ratio(dist.nu, kappa)
    mean = r * mu
    covariance = (r / kappa) * np.eye(p) + (1.0 - (p / kappa) * r - r * r) * np.outer(mu, mu)
    return MomentSummary(
        mean=mean,
        covariance=covariance,
        mean_resultant_length=r,
        circular_variance=1.0 - r,
    )
