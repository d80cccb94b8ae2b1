"""Shared 1-d quadrature node/weight builders.

Weights always include the relevant base-measure density, so that
``sum(w * f(x))`` approximates the integral of ``f`` against that measure.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import roots_genlaguerre

__all__ = [
    "gauss_gamma",
    "gauss_legendre",
    "gauss_unit_normal",
    "midpoint_periodic",
]


def gauss_legendre(n: int, a: float, b: float):
    """Nodes/weights for the plain Lebesgue integral on [a, b]."""
    t, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (b - a) * t + 0.5 * (b + a), 0.5 * (b - a) * w


def gauss_unit_normal(n: int, mean: float = 0.0, var: float = 0.5):
    """Nodes/weights integrating against the N(mean, var) density.

    The default variance 1/2 matches the weight e^{-x^2}/sqrt(pi).
    """
    t, w = np.polynomial.hermite.hermgauss(n)
    return mean + math.sqrt(2.0 * var) * t, w / math.sqrt(math.pi)


def gauss_gamma(n: int, a: float, b: float = 1.0):
    """Nodes/weights integrating against the Gamma(a, b) density."""
    x, w = roots_genlaguerre(n, a - 1.0)
    return x / b, w / math.gamma(a)


def midpoint_periodic(n: int, length: float, normalized: bool = True):
    """Equispaced midpoint rule on [0, length); spectral for periodic integrands.

    ``normalized`` divides by the length (uniform probability measure).
    """
    x = (np.arange(n) + 0.5) * (length / n)
    w = np.full(n, 1.0 / n if normalized else length / n)
    return x, w
