"""Finite kernels built from Hermite and Laguerre orthonormal polynomials,
plus the discrete kernels on the nonnegative integers dual to them."""

from __future__ import annotations

import math

import numpy as np

from ..quadrules import gauss_legendre
from .base import GammaMeasure, KernelSpec, NormalMeasure, ProjectionKernel

__all__ = [
    "HermiteKernel",
    "LaguerreKernel",
    "discrete_hermite",
    "discrete_hermite_quad",
    "discrete_laguerre",
    "discrete_laguerre_quad",
]

_DIAG_EPS = 1e-6


def hermite_basis(n_max: int, x):
    """Orthonormal Hermite functions h_k = H_k / sqrt(2^k k!), k < n_max."""
    x = np.asarray(x, dtype=float)
    out = np.empty(x.shape + (n_max,))
    h_prev = np.ones_like(x)
    out[..., 0] = h_prev
    if n_max == 1:
        return out
    h = math.sqrt(2.0) * x
    out[..., 1] = h
    for k in range(1, n_max - 1):
        h, h_prev = (
            x * math.sqrt(2.0 / (k + 1.0)) * h - math.sqrt(k / (k + 1.0)) * h_prev,
            h,
        )
        out[..., k + 1] = h
    return out


def laguerre_basis(n_max: int, nu: float, x):
    """Orthonormal Laguerre functions for the Gamma(nu+1, 1) weight."""
    x = np.asarray(x, dtype=float)
    out = np.empty(x.shape + (n_max,))
    l_prev = np.ones_like(x)
    out[..., 0] = l_prev
    if n_max == 1:
        return out
    l = (1.0 + nu - x) / math.sqrt(1.0 + nu)
    out[..., 1] = l
    for k in range(1, n_max - 1):
        c0 = math.sqrt((k + 1.0) * (k + 1.0 + nu))
        l, l_prev = (
            ((2.0 * k + 1.0 + nu - x) * l - math.sqrt(k * (k + nu)) * l_prev) / c0,
            l,
        )
        out[..., k + 1] = l
    return out


class HermiteKernel(ProjectionKernel):
    """Rank-N projection kernel of the Gaussian (GUE) eigenvalue ensemble."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("hermite kernel requires n >= 1")
        super().__init__(KernelSpec("hermite", {"n": n}), NormalMeasure(0.0, 0.5), n)
        self.n = n

    def basis_matrix(self, points):
        return hermite_basis(self.n, points).astype(complex)

    def eval(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        n = self.n
        bx = hermite_basis(n + 1, x)
        by = hermite_basis(n + 1, y)
        num = bx[..., n] * by[..., n - 1] - by[..., n] * bx[..., n - 1]
        with np.errstate(divide="ignore", invalid="ignore"):
            cd = math.sqrt(n / 2.0) * num / (x - y)
        near = np.abs(x - y) < _DIAG_EPS
        if np.any(near):
            direct = np.sum(bx[..., :n] * by[..., :n], axis=-1)
            cd = np.where(near, direct, cd)
        return cd + 0.0j


class LaguerreKernel(ProjectionKernel):
    """Rank-N projection kernel of the complex Wishart ensemble."""

    def __init__(self, n: int, nu: float):
        if n < 1:
            raise ValueError("laguerre kernel requires n >= 1")
        if nu <= -1.0:
            raise ValueError("laguerre kernel requires nu > -1")
        super().__init__(
            KernelSpec("laguerre", {"n": n, "nu": nu}), GammaMeasure(nu + 1.0, 1.0), n
        )
        self.n = n
        self.nu = nu

    def basis_matrix(self, points):
        return laguerre_basis(self.n, self.nu, points).astype(complex)

    def eval(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        n, nu = self.n, self.nu
        bx = laguerre_basis(n + 1, nu, x)
        by = laguerre_basis(n + 1, nu, y)
        num = bx[..., n] * by[..., n - 1] - by[..., n] * bx[..., n - 1]
        with np.errstate(divide="ignore", invalid="ignore"):
            cd = -math.sqrt(n * (n + nu)) * num / (x - y)
        near = np.abs(x - y) < _DIAG_EPS
        if np.any(near):
            direct = np.sum(bx[..., :n] * by[..., :n], axis=-1)
            cd = np.where(near, direct, cd)
        return cd + 0.0j


# ---------------------------------------------------------------------------
# discrete kernels on the nonnegative integers
# ---------------------------------------------------------------------------

def discrete_hermite(n: int, m: int, r: float) -> float:
    """Closed form of the discrete Hermite kernel entry (n != m).

    The diagonal has no printed closed form; use the quadrature path.
    """
    if n < 0 or m < 0:
        raise ValueError("indices must be nonnegative")
    if n == m:
        return discrete_hermite_quad(n, m, r)
    from ..specfun import hermite

    lognorm = -0.5 * (
        math.log(math.pi)
        + math.lgamma(n + 1.0)
        + math.lgamma(m + 1.0)
        + (n + m + 2.0) * math.log(2.0)
    )
    val = (
        hermite(n + 1, r) * hermite(m, r) - hermite(n, r) * hermite(m + 1, r)
    ) / (n - m)
    return -math.exp(lognorm - r * r) * val


def discrete_laguerre(n: int, m: int, r: float, nu: float) -> float:
    """Closed form of the discrete Laguerre kernel entry (n != m), r > 0."""
    if r <= 0.0:
        raise ValueError("discrete laguerre kernel requires r > 0")
    if nu <= -1.0:
        raise ValueError("discrete laguerre kernel requires nu > -1")
    if n < 0 or m < 0:
        raise ValueError("indices must be nonnegative")
    if n == m:
        return discrete_laguerre_quad(n, m, r, nu)
    from ..specfun import laguerre

    lognorm = 0.5 * (
        math.lgamma(n + 1.0)
        + math.lgamma(m + 1.0)
        - math.lgamma(n + nu + 1.0)
        - math.lgamma(m + nu + 1.0)
    )
    val = (
        laguerre(n - 1, nu + 1.0, r) * laguerre(m, nu, r)
        - laguerre(n, nu, r) * laguerre(m - 1, nu + 1.0, r)
    ) / (n - m)
    return math.exp(lognorm) * r ** (nu + 1.0) * math.exp(-r) * val


def discrete_hermite_quad(n: int, m: int, r: float, nodes: int = 400) -> float:
    """Quadrature path: overlap of Hermite functions n, m on [r, infinity)."""
    hi = max(9.0, r + 1.0)
    x, w = gauss_legendre(nodes, r, hi)
    b = hermite_basis(max(n, m) + 1, x)
    dens = np.exp(-x * x) / math.sqrt(math.pi)
    return float(np.sum(w * dens * b[:, n] * b[:, m]))


def discrete_laguerre_quad(n: int, m: int, r: float, nu: float, nodes: int = 600) -> float:
    """Quadrature path: overlap of Laguerre functions n, m on [r, infinity)."""
    if r <= 0.0:
        raise ValueError("discrete laguerre kernel requires r > 0")
    hi = max(250.0, r + 1.0)
    x, w = gauss_legendre(nodes, r, hi)
    b = laguerre_basis(max(n, m) + 1, nu, x)
    dens = x**nu * np.exp(-x) / math.gamma(nu + 1.0)
    return float(np.sum(w * dens * b[:, n] * b[:, m]))
