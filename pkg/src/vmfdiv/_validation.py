"""Argument checks shared by the public functions."""

import math

import numpy as np


def check_finite(value, name):
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


def check_nonnegative(value, name):
    value = check_finite(value, name)
    if value < 0:
        raise ValueError(f"{name} must be >= 0, got {value!r}")
    return value


def check_positive(value, name):
    value = check_finite(value, name)
    if value <= 0:
        raise ValueError(f"{name} must be > 0, got {value!r}")
    return value


def check_dimension(p):
    if isinstance(p, bool) or int(p) != p:
        raise ValueError(f"dimension p must be an integer, got {p!r}")
    p = int(p)
    if p < 2:
        raise ValueError(f"dimension p must be >= 2, got {p}")
    return p


def check_alpha(alpha):
    alpha = check_finite(alpha, "alpha")
    if alpha <= 0:
        raise ValueError(f"alpha must be > 0, got {alpha!r}")
    if alpha == 1:
        raise ValueError("alpha = 1 is not a simple order; use kl() for the alpha -> 1 limit")
    return alpha


def as_vector(x, name, p=None):
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be a 1-D vector, got shape {arr.shape}")
    if p is not None and arr.shape[0] != p:
        raise ValueError(f"{name} has length {arr.shape[0]}, expected {p}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr
