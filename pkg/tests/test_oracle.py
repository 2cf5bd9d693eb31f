import math

import numpy as np
import pytest

from vmfdiv import chi_square, kl, make_vmf, uniform_sphere
from vmfdiv.bessel import bessel_ratio
from vmfdiv.oracle import (
    McEstimate,
    SphereSampler,
    finite_diff_log_normalizer,
    half_integer_log_bessel,
    mc_divergence,
    mc_sphere_expectation,
)


def test_constant_integrand_has_zero_error():
    est = mc_sphere_expectation(3, lambda x: np.ones(len(x)), 5000, seed=1)
    assert est.value == 1.0 and est.std_error == 0.0


def test_rejects_too_few_samples():
    with pytest.raises(ValueError):
        mc_sphere_expectation(3, lambda x: np.ones(len(x)), 999)


def test_integrand_shape_checked():
    with pytest.raises(ValueError):
        mc_sphere_expectation(3, lambda x: x, 2000)


@pytest.mark.parametrize("shards", [1, 3])
def test_deterministic(shards):
    f = lambda x: np.exp(x[:, 0])  # noqa: E731
    a = mc_sphere_expectation(3, f, 300_001, seed=42, shards=shards)
    b = mc_sphere_expectation(3, f, 300_001, seed=42, shards=shards)
    assert a == b
    assert a.n_samples == 300_001


def test_different_seeds_differ():
    f = lambda x: x[:, 0]  # noqa: E731
    assert mc_sphere_expectation(2, f, 10_000, seed=1).value != mc_sphere_expectation(2, f, 10_000, seed=2).value


@pytest.mark.parametrize("p", [2, 3])
def test_sampler_isotropy(p):
    n = 1_000_000
    x = SphereSampler(p, seed=p).sample(n)
    assert np.abs(np.linalg.norm(x, axis=1) - 1).max() <= 1e-12
    assert np.linalg.norm(x.mean(axis=0)) <= 4 / math.sqrt(n)


def test_density_normalization_oracle():
    d = make_vmf(2, 2.0, [1, 0])
    area = 2 * math.pi
    est = mc_sphere_expectation(2, lambda x: area * np.exp(d.log_pdf(x)), 1_000_000, seed=3)
    assert est.agrees_with(1.0)


def test_kl_identical_is_zero():
    y = make_vmf(3, 2.0, [1, 1, 0])
    est = mc_divergence("kl", y, y, 10_000, seed=0)
    assert abs(est.value) <= 3 * est.std_error + 1e-15


@pytest.mark.slow
def test_kl_uniform_reference_large_sample():
    y = make_vmf(3, 1.0, [0, 0, 1])
    est = mc_divergence("kl", y, uniform_sphere(3), 10_000_000, seed=5)
    assert est.agrees_with(kl(y, uniform_sphere(3)).value)


@pytest.mark.slow
def test_chi_square_rotated_reference():
    y = make_vmf(2, 0.5, [1, 0])
    z = make_vmf(2, 0.5, [0, 1])
    est = mc_divergence("chi", y, z, 10_000_000, seed=6)
    assert est.agrees_with(chi_square(y, z).value)


def test_unknown_kind():
    y = make_vmf(2, 1.0, [1, 0])
    with pytest.raises(ValueError):
        mc_divergence("tv", y, y, 1000)


def test_agrees_with():
    est = McEstimate(1.0, 0.1, 1000, 0)
    assert est.agrees_with(1.29) and not est.agrees_with(1.31)


def test_half_integer_examples():
    assert half_integer_log_bessel(0.5, 1.0) == pytest.approx(
        math.log(math.sqrt(2 / math.pi) * math.sinh(1.0)), rel=1e-15
    )
    expected = math.log(math.sqrt(2 / (2 * math.pi)) * (math.cosh(2.0) - math.sinh(2.0) / 2))
    assert half_integer_log_bessel(1.5, 2.0) == pytest.approx(expected, rel=1e-14)
    big = half_integer_log_bessel(0.5, 700.0)
    assert big == pytest.approx(700 - 0.5 * math.log(1400 * math.pi), rel=1e-15)
    assert math.isfinite(half_integer_log_bessel(0.5, 1e5))


@pytest.mark.parametrize("nu,z", [(1.0, 1.0), (0.5, 0.0), (-0.5, 1.0)])
def test_half_integer_rejects(nu, z):
    with pytest.raises(ValueError):
        half_integer_log_bessel(nu, z)


@pytest.mark.parametrize("nu", [1.5, 2.5, 5.5])
@pytest.mark.parametrize("z", [0.1, 1.0, 10.0, 100.0])
def test_half_integer_recurrence(nu, z):
    def scaled(v):
        return math.exp(half_integer_log_bessel(v, z) - z)

    i = scaled(nu)
    residual = i - z / (2 * nu) * (scaled(nu - 1) - scaled(nu + 1))
    assert abs(residual) / i <= 1e-12


def test_finite_difference_examples():
    assert abs(finite_diff_log_normalizer(3, 1.0, 1e-5) - (1 / math.tanh(1.0) - 1)) <= 1e-6
    assert abs(finite_diff_log_normalizer(2, 10.0, 1e-4) - bessel_ratio(0, 10.0)) <= 1e-6
    assert abs(finite_diff_log_normalizer(4, 0.5, 1e-5) - bessel_ratio(1, 0.5)) <= 1e-6
    with pytest.raises(ValueError):
        finite_diff_log_normalizer(3, 1.0, 2.0)
