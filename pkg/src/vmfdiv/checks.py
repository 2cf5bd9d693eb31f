"""Self-check suites behind ``vmfdiv check``.

Each suite returns a list of :class:`CheckResult`.  The identity suite
compares quantities in a form that stays well conditioned in double
precision: the Hellinger relation is checked on the Bhattacharyya
coefficient ``1 - d_h**2 / 2`` rather than on its logarithm, and the
alpha -> 1 limit uses a step small enough that the O(alpha - 1) gap
between Renyi and KL is below the tolerance.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from . import bessel, bounds, divergence, oracle
from .vmf import make_vmf, uniform_sphere

DEFAULT_SAMPLES = 1_000_000
SUITES = ("identities", "oracle", "bounds", "asymptotics")


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str


def default_samples():
    raw = os.environ.get("VMF_CHECK_SAMPLES")
    return int(float(raw)) if raw else DEFAULT_SAMPLES


def random_pair(rng, dims=(2, 3, 4, 10), kappa_range=(0.1, 100.0)):
    p = int(rng.choice(dims))
    ky, kz = rng.uniform(*kappa_range, size=2)
    y = make_vmf(p, ky, rng.standard_normal(p))
    z = make_vmf(p, kz, rng.standard_normal(p))
    return y, z


def identities(seed=0, samples=None, n_points=200):
    rng = np.random.default_rng(seed)
    worst_chi = worst_bc = worst_kl = 0.0
    for _ in range(n_points):
        y, z = random_pair(rng)
        chi = divergence.chi_square(y, z).value
        worst_chi = max(worst_chi, abs(divergence.renyi(y, z, 2.0).value - math.log1p(chi)))
        h2 = divergence.hellinger_sq(y, z).value
        d_half = divergence.renyi(y, z, 0.5).value
        worst_bc = max(worst_bc, abs(math.exp(-0.5 * d_half) - (1.0 - 0.5 * h2)))
        d_kl = divergence.kl(y, z).value
        for step in (1e-7, -1e-7):
            gap = abs(divergence.renyi(y, z, 1.0 + step).value - d_kl) / (1.0 + d_kl)
            worst_kl = max(worst_kl, gap)
    return [
        CheckResult("identities", "renyi(2) = ln(1 + chi_sq)", worst_chi <= 1e-9,
                    f"max abs gap {worst_chi:.3e} (tol 1e-9)"),
        CheckResult("identities", "exp(-renyi(1/2)/2) = 1 - hellinger_sq/2", worst_bc <= 1e-12,
                    f"max abs gap {worst_bc:.3e} (tol 1e-12)"),
        CheckResult("identities", "renyi(1 +- 1e-7) -> kl", worst_kl <= 1e-4,
                    f"max rel gap {worst_kl:.3e} (tol 1e-4)"),
    ]


ORACLE_SETTINGS = (
    # (p, kappa_y, mu_y, kappa_z or None for uniform, mu_z, alpha)
    (2, 0.5, (1.0, 0.0), 0.5, (0.0, 1.0), 0.5),
    (2, 2.0, (1.0, 0.0), None, None, 2.0),
    (2, 5.0, (1.0, 1.0), 3.0, (-1.0, 0.5), 0.3),
    (3, 1.0, (0.0, 0.0, 1.0), None, None, 0.9),
    (3, 2.0, (1.0, 0.0, 0.0), 4.0, (0.0, 1.0, 0.0), 1.5),
    (3, 8.0, (0.0, 1.0, 1.0), 6.0, (1.0, 1.0, 0.0), 0.5),
)


def oracle_suite(seed=0, samples=None):
    n = samples or default_samples()
    results = []
    for i, (p, ky, muy, kz, muz, alpha) in enumerate(ORACLE_SETTINGS):
        y = make_vmf(p, ky, muy)
        z = uniform_sphere(p) if kz is None else make_vmf(p, kz, muz)
        analytic = {
            "kl": divergence.kl(y, z).value,
            "chi": divergence.chi_square(y, z).value,
            "hellinger": divergence.hellinger_sq(y, z).value,
            "renyi": divergence.renyi(y, z, alpha).value,
        }
        for kind, value in analytic.items():
            est = oracle.mc_divergence(kind, y, z, n, seed=seed + i,
                                       alpha=alpha if kind == "renyi" else None)
            z_score = (est.value - value) / est.std_error if est.std_error > 0 else 0.0
            results.append(CheckResult(
                "oracle", f"{kind} setting {i} (p={p})", est.agrees_with(value),
                f"analytic {value:.6g}, mc {est.value:.6g} +- {est.std_error:.2g} ({z_score:+.2f} se)",
            ))
    return results


def bounds_suite(seed=0, samples=None):
    nus = (0.0, 0.5, 1.0, 2.0, 4.5)
    kappas = (0.5, 1.0, 2.0, 10.0, 100.0, 1e3, 1e4)
    violations = {"log-bessel sandwich": 0, "ratio sandwich": 0,
                  "uniform-anchored sandwich": 0, "envelopes": 0}
    counts = dict.fromkeys(violations, 0)
    for nu in nus:
        for ky in kappas:
            value = bessel.log_iv(nu, ky)
            for kz in (0.1, 1.0, ky):
                counts["log-bessel sandwich"] += 1
                pair = bounds.amos_log_bessel_bounds(nu, ky, kz)
                violations["log-bessel sandwich"] += not pair.contains(value)
            counts["ratio sandwich"] += 1
            violations["ratio sandwich"] += not bounds.amos_ratio_bounds(nu, ky).contains(
                bessel.bessel_ratio(nu, ky))
            counts["uniform-anchored sandwich"] += 1
            violations["uniform-anchored sandwich"] += not bounds.amos_log_bessel_bounds_uniform(
                nu, ky).contains(value)
            if ky >= 1.0:
                counts["envelopes"] += 1
                violations["envelopes"] += not bounds.lf_envelopes(nu, ky).contains(value)
    return [
        CheckResult("bounds", name, violations[name] == 0,
                    f"{violations[name]} violations in {counts[name]} points")
        for name in violations
    ]


def _relative_change(a, b):
    return abs(b / a - 1.0)


def asymptotics_suite(seed=0, samples=None):
    grid = (1e2, 1e3, 1e4, 1e5, 1e6)
    results = []
    for p in (2, 3, 4, 10):
        mu = np.eye(p)[0]
        z = make_vmf(p, 1.0, mu)
        kl_ratio = [divergence.kl(make_vmf(p, k, mu), z).value / math.log(k) for k in grid]
        r2_ratio = [divergence.renyi(make_vmf(p, k, mu), z, 2.0).value / math.log(k) for k in grid]
        for label, seq in (("kl/ln(kappa_y)", kl_ratio), ("renyi2/ln(kappa_y)", r2_ratio)):
            change = _relative_change(seq[-2], seq[-1])
            results.append(CheckResult("asymptotics", f"{label} stabilizes (p={p})", change < 0.2,
                                       f"change over last decade {change:.3f} (tol 0.2)"))
    for p in (2, 3):
        mu = np.eye(p)[0]
        z = make_vmf(p, 1.0, mu)
        chi_ratio = [divergence.chi_square(make_vmf(p, k, mu), z).value / k for k in grid]
        growth = chi_ratio[-1] / chi_ratio[-2]
        results.append(CheckResult("asymptotics", f"chi_sq/kappa_y bounded (p={p})",
                                   all(map(math.isfinite, chi_ratio)) and growth <= 1.2,
                                   f"last-decade growth factor {growth:.3f} (tol 1.2)"))
    for nu in (0.0, 0.5, 1.0, 2.0):
        k = 1e5
        scaled = k * (1.0 - bessel.bessel_ratio(nu, k))
        change = abs(scaled / (nu + 0.5) - 1.0)
        results.append(CheckResult("asymptotics", f"kappa (1 - r) -> nu + 1/2 (nu={nu:g})",
                                   change <= 0.01, f"relative gap {change:.2e} (tol 0.01)"))
    return results


SUITE_FUNCS = {
    "identities": identities,
    "oracle": oracle_suite,
    "bounds": bounds_suite,
    "asymptotics": asymptotics_suite,
}


def run(suite, seed=0, samples=None):
    names = SUITES if suite == "all" else (suite,)
    unknown = [s for s in names if s not in SUITE_FUNCS]
    if unknown:
        raise ValueError(f"unknown suite {unknown[0]!r}; choose from {', '.join(SUITES)} or all")
    results = []
    for name in names:
        results.extend(SUITE_FUNCS[name](seed=seed, samples=samples))
    return results
