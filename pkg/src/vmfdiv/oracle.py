"""Independent reference computations used to check the analytic code.

Nothing in here calls :mod:`vmfdiv.bessel`, :mod:`vmfdiv.vmf` or
:mod:`vmfdiv.divergence` for the quantity being checked:

* sphere integrals are estimated by plain Monte Carlo over the uniform
  distribution, with points drawn as normalized standard Gaussian vectors;
* vMF normalizers inside Monte Carlo integrands come from
  :func:`scipy.special.ive`;
* half-integer Bessel values are built from ``sinh``/``cosh`` and the
  three-term recurrence, in high-precision decimal arithmetic.

Random numbers come from NumPy's PCG64 generator.  A seed is expanded with
:class:`numpy.random.SeedSequence`, and each shard gets its own child
sequence from ``SeedSequence.spawn``, so a given ``(seed, n, shards)``
always reproduces the same estimate bit for bit.
"""

from __future__ import annotations

import decimal
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.special import ive

from ._validation import check_alpha, check_dimension, check_positive

MIN_SAMPLES = 1000
CHUNK_SIZE = 1 << 18


@dataclass(frozen=True)
class McEstimate:
    value: float
    std_error: float
    n_samples: int
    seed: int

    def agrees_with(self, target, n_se=3.0):
        return abs(self.value - target) <= n_se * self.std_error


class SphereSampler:
    """Uniform points on the unit sphere in R^p."""

    def __init__(self, p, seed=0):
        self.p = check_dimension(p)
        self.seed = int(seed)
        self._rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(self.seed)))

    @classmethod
    def from_seed_sequence(cls, p, seed_seq, seed=0):
        sampler = cls.__new__(cls)
        sampler.p = check_dimension(p)
        sampler.seed = int(seed)
        sampler._rng = np.random.Generator(np.random.PCG64(seed_seq))
        return sampler

    def sample(self, n):
        g = self._rng.standard_normal((int(n), self.p))
        return g / np.linalg.norm(g, axis=1, keepdims=True)


class _RunningMoments:
    """Streaming mean and sum of squared deviations (Chan et al. pairwise update)."""

    def __init__(self):
        self.n = 0
        self.mean = 0.0
        self.m2 = 0.0

    def add_batch(self, values):
        n_b = values.size
        if n_b == 0:
            return
        mean_b = float(values.mean())
        m2_b = float(((values - mean_b) ** 2).sum())
        self.merge(n_b, mean_b, m2_b)

    def merge(self, n_b, mean_b, m2_b):
        n = self.n + n_b
        delta = mean_b - self.mean
        self.mean += delta * n_b / n
        self.m2 += m2_b + delta * delta * self.n * n_b / n
        self.n = n


def _shard_moments(p, integrand, n, seed_seq):
    sampler = SphereSampler.from_seed_sequence(p, seed_seq)
    acc = _RunningMoments()
    remaining = n
    while remaining > 0:
        m = min(CHUNK_SIZE, remaining)
        values = np.asarray(integrand(sampler.sample(m)), dtype=float)
        if values.shape != (m,):
            raise ValueError(f"integrand must return shape ({m},), got {values.shape}")
        acc.add_batch(values)
        remaining -= m
    return acc


def mc_sphere_expectation(p, integrand, n, seed=0, shards=1) -> McEstimate:
    """Monte Carlo estimate of the uniform-sphere average of ``integrand``.

    ``integrand`` maps an ``(m, p)`` array of unit vectors to ``m`` values.
    Multiply the result by the sphere area to get the surface integral.
    The ``n`` samples are split over ``shards`` independent streams that
    run on a thread pool and are combined in shard order.
    """
    p = check_dimension(p)
    n = int(n)
    if n < MIN_SAMPLES:
        raise ValueError(f"need at least {MIN_SAMPLES} samples, got {n}")
    shards = max(1, int(shards))
    children = np.random.SeedSequence(int(seed)).spawn(shards) if shards > 1 else [
        np.random.SeedSequence(int(seed))
    ]
    sizes = [n // shards + (1 if i < n % shards else 0) for i in range(shards)]
    if shards == 1:
        parts = [_shard_moments(p, integrand, n, children[0])]
    else:
        with ThreadPoolExecutor(max_workers=shards) as pool:
            parts = list(pool.map(lambda a: _shard_moments(p, integrand, *a), zip(sizes, children)))
    total = _RunningMoments()
    for part in parts:
        total.merge(part.n, part.mean, part.m2)
    variance = total.m2 / (total.n - 1)
    return McEstimate(
        value=total.mean,
        std_error=math.sqrt(max(variance, 0.0) / total.n),
        n_samples=total.n,
        seed=int(seed),
    )


def log_sphere_area(p):
    return math.log(2.0) + 0.5 * p * math.log(math.pi) - math.lgamma(0.5 * p)


def _log_normalizer(p, kappa):
    nu = 0.5 * p - 1.0
    return (nu + 1.0) * math.log(2.0 * math.pi) + math.log(ive(nu, kappa)) + kappa - nu * math.log(kappa)


def _log_density(dist, x):
    """Log density of a vMF or uniform distribution, for Monte Carlo integrands."""
    if getattr(dist, "kappa", None) is None:
        return np.full(x.shape[0], -log_sphere_area(dist.p))
    return dist.kappa * (x @ np.asarray(dist.mu)) - _log_normalizer(dist.p, dist.kappa)


def mc_divergence(kind, y, z, n, seed=0, alpha=None, shards=1) -> McEstimate:
    """Monte Carlo estimate of a divergence straight from its integral definition.

    ``kind`` is one of ``"kl"``, ``"renyi"``, ``"chi"``, ``"hellinger"``.
    Integrals are averages over uniform sphere points times the sphere
    area.  For Renyi the log is applied after the integral is estimated and
    the standard error is carried through by the delta method.
    """
    if y.p != z.p:
        raise ValueError(f"dimension mismatch: obtained p={y.p}, reference p={z.p}")
    p = y.p
    log_area = log_sphere_area(p)

    def log_ratio_terms(x):
        return _log_density(y, x), _log_density(z, x)

    if kind == "kl":
        def integrand(x):
            ly, lz = log_ratio_terms(x)
            return np.exp(log_area + ly) * (ly - lz)
        return mc_sphere_expectation(p, integrand, n, seed, shards)

    if kind == "renyi":
        alpha = check_alpha(alpha)

        def integrand(x):
            ly, lz = log_ratio_terms(x)
            return np.exp(log_area + alpha * ly + (1.0 - alpha) * lz)
        inner = mc_sphere_expectation(p, integrand, n, seed, shards)
        value = math.log(inner.value) / (alpha - 1.0)
        se = inner.std_error / (abs(alpha - 1.0) * inner.value)
        return McEstimate(value, se, inner.n_samples, inner.seed)

    if kind == "chi":
        def integrand(x):
            ly, lz = log_ratio_terms(x)
            return np.exp(log_area + 2.0 * ly - lz)
        inner = mc_sphere_expectation(p, integrand, n, seed, shards)
        return McEstimate(inner.value - 1.0, inner.std_error, inner.n_samples, inner.seed)

    if kind == "hellinger":
        def integrand(x):
            ly, lz = log_ratio_terms(x)
            return np.exp(log_area + 0.5 * (ly + lz))
        inner = mc_sphere_expectation(p, integrand, n, seed, shards)
        return McEstimate(2.0 * (1.0 - inner.value), 2.0 * inner.std_error, inner.n_samples, inner.seed)

    raise ValueError(f"unknown divergence kind {kind!r}")


def half_integer_log_bessel(nu, z):
    """Exact ``ln I_nu(z)`` for ``nu`` in ``{1/2, 3/2, 5/2, ...}``.

    Starts from ``I_{-1/2}(z) = sqrt(2/(pi z)) cosh z`` and
    ``I_{1/2}(z) = sqrt(2/(pi z)) sinh z`` and steps up with
    ``I_{m+1} = I_{m-1} - (2m/z) I_m``.  The upward recurrence cancels
    badly when ``z`` is small compared with the order, so it runs in
    decimal arithmetic with enough guard digits to absorb the loss.
    """
    nu = float(nu)
    twice = 2.0 * nu
    if nu <= 0 or twice != int(twice) or int(twice) % 2 != 1:
        raise ValueError(f"order must be a positive half-integer, got {nu!r}")
    z = check_positive(z, "z")
    # digits lost to cancellation are about log10(I_{-1/2} / I_nu)
    lost = nu * max(0.0, math.log10(2.0 * nu / z) + 1.0)
    ctx = decimal.Context(prec=40 + int(lost), Emax=decimal.MAX_EMAX, Emin=decimal.MIN_EMIN)
    zd = ctx.create_decimal(z)
    ez, emz = ctx.exp(zd), ctx.exp(-zd)
    prev = ctx.multiply(ctx.add(ez, emz), ctx.create_decimal("0.5"))   # cosh z
    cur = ctx.multiply(ctx.subtract(ez, emz), ctx.create_decimal("0.5"))    # sinh z
    m = 0.5
    while m < nu:
        step = ctx.divide(ctx.create_decimal(2.0 * m), zd)
        prev, cur = cur, ctx.subtract(prev, ctx.multiply(step, cur))
        m += 1.0
    return float(ctx.ln(cur)) + 0.5 * math.log(2.0 / (math.pi * z))


def finite_diff_log_normalizer(p, kappa, h):
    """Central difference ``(ln C(kappa+h) - ln C(kappa-h)) / (2h)``.

    The derivative of the log-normalizer in ``kappa`` is the mean resultant length.
    """
    from .vmf import log_normalizer

    kappa = check_positive(kappa, "kappa")
    h = check_positive(h, "h")
    if kappa - h <= 0:
        raise ValueError(f"step h={h!r} must be smaller than kappa={kappa!r}")
    return (log_normalizer(p, kappa + h) - log_normalizer(p, kappa - h)) / (2.0 * h)
