"""von Mises-Fisher distributions, their closed-form divergences, and Bessel bounds."""

from .bessel import BesselMethod, LogBesselValue, bessel_ratio, log_bessel_i, log_iv, log_iv_over_power
from .bounds import (
    BoundPair,
    amos_log_bessel_bounds,
    amos_log_bessel_bounds_uniform,
    amos_ratio_bounds,
    hankel_circular_variance,
    lf_envelopes,
)
from .divergence import (
    Branch,
    CombinedConcentration,
    CombinedKind,
    DivergenceResult,
    TvBoundReport,
    chi_square,
    combined_concentration,
    hellinger_sq,
    kl,
    renyi,
    tv_bounds,
)
from .vmf import (
    MomentSummary,
    UniformSphere,
    VonMisesFisher,
    log_normalizer,
    log_pdf,
    log_uniform_density,
    make_vmf,
    moments,
    uniform_sphere,
)

__version__ = "0.1.0"

__all__ = [
    "BesselMethod",
    "BoundPair",
    "Branch",
    "CombinedConcentration",
    "CombinedKind",
    "DivergenceResult",
    "LogBesselValue",
    "MomentSummary",
    "TvBoundReport",
    "UniformSphere",
    "VonMisesFisher",
    "amos_log_bessel_bounds",
    "amos_log_bessel_bounds_uniform",
    "amos_ratio_bounds",
    "bessel_ratio",
    "chi_square",
    "combined_concentration",
    "hankel_circular_variance",
    "hellinger_sq",
    "kl",
    "lf_envelopes",
    "log_bessel_i",
    "log_iv",
    "log_iv_over_power",
    "log_normalizer",
    "log_pdf",
    "log_uniform_density",
    "make_vmf",
    "moments",
    "renyi",
    "tv_bounds",
    "uniform_sphere",
]
