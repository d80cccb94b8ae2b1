"""Infinite-rank kernels on the line and half-line: sinc, Airy, Bessel, and
their theta-deformed counterparts evaluated by fixed Gauss-Legendre
quadrature of the spectral-window integrals."""

from __future__ import annotations

import math

import numpy as np

from ..quadrules import gauss_legendre
from ..specfun import _bessel_any, airy, bessel_j, bessel_j_prime, theta
from .base import Kernel, KernelSpec, LebesgueLine

__all__ = [
    "AiryKernel",
    "BesselKernel",
    "SincKernel",
    "ThetaLineKernel",
    "airy_kernel_integral",
    "bessel_kernel_integral",
    "sinc_kernel_integral",
]

_DIAG_EPS = 1e-6


class SincKernel(Kernel):
    """sin(x - y) / (pi (x - y)) on the whole line."""

    def __init__(self):
        super().__init__(KernelSpec("sinc"), LebesgueLine())

    def eval(self, x, y):
        u = np.asarray(x, dtype=float) - np.asarray(y, dtype=float)
        near = np.abs(u) < _DIAG_EPS
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.sin(u) / (math.pi * u)
        if np.any(near):
            u2 = u * u
            series = (1.0 - u2 / 6.0 * (1.0 - u2 / 20.0)) / math.pi
            out = np.where(near, series, out)
        return out + 0.0j


def sinc_kernel_integral(x, y, nodes: int = 128):
    """Spectral-window form (1/2pi) int_{-1}^{1} e^{i g (x-y)} dg."""
    g, w = gauss_legendre(nodes, -1.0, 1.0)
    u = (np.asarray(x, dtype=float) - np.asarray(y, dtype=float))[..., None]
    return np.sum(np.exp(1j * g * u) * w, axis=-1) / (2.0 * math.pi)


class AiryKernel(Kernel):
    """(Ai(x) Ai'(y) - Ai(y) Ai'(x)) / (x - y) on the whole line."""

    def __init__(self):
        super().__init__(KernelSpec("airy"), LebesgueLine())

    def eval(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        shape = np.broadcast_shapes(x.shape, y.shape)
        xb = np.broadcast_to(x, shape).reshape(-1)
        yb = np.broadcast_to(y, shape).reshape(-1)
        ax, apx = airy(xb)
        ay, apy = airy(yb)
        u = xb - yb
        near = np.abs(u) < _DIAG_EPS
        with np.errstate(divide="ignore", invalid="ignore"):
            out = (ax * apy - ay * apx) / u
        if np.any(near):
            mid = 0.5 * (xb + yb)
            am, apm = airy(mid)
            out = np.where(near, apm * apm - mid * am * am, out)
        return (out.reshape(shape) if shape else out.reshape(())) + 0.0j


def airy_kernel_integral(x, y, nodes: int = 400, upper: float = 18.0):
    """Overlap form int_0^inf Ai(x+t) Ai(y+t) dt, truncated where Ai decays."""
    t, w = gauss_legendre(nodes, 0.0, upper)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    ax, _ = airy(x[..., None] + t)
    ay, _ = airy(y[..., None] + t)
    return np.sum(ax * ay * w, axis=-1)


class BesselKernel(Kernel):
    """Hard-edge kernel on [0, inf) with index nu > -1."""

    def __init__(self, nu: float):
        if nu <= -1.0:
            raise ValueError("bessel kernel requires nu > -1")
        super().__init__(KernelSpec("bessel", {"nu": nu}), LebesgueLine(0.0, math.inf))
        self.nu = nu

    def eval(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        nu = self.nu
        jx, jy = bessel_j(nu, x), bessel_j(nu, y)
        jpx, jpy = bessel_j_prime(nu, x), bessel_j_prime(nu, y)
        near = np.abs(x - y) < _DIAG_EPS
        with np.errstate(divide="ignore", invalid="ignore"):
            out = (
                np.sqrt(x * y)
                * (jx * y * jpy - x * jpx * jy)
                / (x * x - y * y)
            )
        if np.any(near):
            m = 0.5 * (x + y)
            jm = _bessel_any(nu, m)
            jlo = _bessel_any(nu - 1.0, m)
            jhi = _bessel_any(nu + 1.0, m)
            out = np.where(near, 0.5 * m * (jm * jm - jlo * jhi), out)
        return out + 0.0j


def bessel_kernel_integral(x, y, nu: float, nodes: int = 256):
    """Overlap form int_0^1 sqrt(x t) J_nu(x t) sqrt(y t) J_nu(y t) dt."""
    t, w = gauss_legendre(nodes, 0.0, 1.0)
    x = np.asarray(x, dtype=float)[..., None]
    y = np.asarray(y, dtype=float)[..., None]
    fx = np.sqrt(x * t) * bessel_j(nu, x * t)
    fy = np.sqrt(y * t) * bessel_j(nu, y * t)
    return np.sum(fx * fy * w, axis=-1)


# ---------------------------------------------------------------------------
# theta-deformed infinite kernels on the line / half-line
# ---------------------------------------------------------------------------

class ThetaLineKernel(Kernel):
    """Bulk limits of the theta-ladder families, indexed A, B, C, D.

    Family A lives on the whole line; B, C, D on [0, inf).  The spectral
    integrals are evaluated with a fixed 256-node Gauss-Legendre rule, which
    is validated against a 512-node refinement in the tests.
    """

    def __init__(self, family: str, tau: complex, nodes: int = 256):
        if family not in ("A", "B", "C", "D"):
            raise ValueError(f"unknown theta-line family {family!r}")
        tau = complex(tau)
        if tau.imag <= 0.0 or abs(tau.real) > 1e-12:
            raise ValueError("theta-line kernel requires pure imaginary tau")
        lo = -math.inf if family == "A" else 0.0
        super().__init__(
            KernelSpec(f"theta_{family.lower()}", {"tau": tau}),
            LebesgueLine(lo, math.inf),
        )
        self.family = family
        self.tau = tau
        if family == "A":
            g, w = gauss_legendre(nodes, 0.0, 1.0)
        else:
            g, w = gauss_legendre(nodes, -1.0, 1.0)
        self._gamma = g
        self._weights = w
        # gamma-dependent normalizers are point-independent; cache them
        if family == "A":
            self._norm = np.real(theta(2, 2.0 * tau * g, 2.0 * tau))
        else:
            self._norm = np.real(theta(2, tau * g, 2.0 * tau))

    def eval(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        g = self._gamma
        w = self._weights
        tau = self.tau
        xg = x[..., None] / math.pi
        yg = y[..., None] / math.pi
        if self.family == "A":
            vals = (
                np.exp(2j * (x[..., None] - y[..., None]) * g)
                * theta(2, xg + tau * g, tau)
                * theta(2, yg - tau * g, tau)
                / self._norm
            )
            return np.sum(vals * w, axis=-1) / math.pi
        mu = 1 if self.family == "B" else 2
        diff = (
            np.exp(1j * (x[..., None] - y[..., None]) * g)
            * theta(mu, xg + 0.5 * tau * g, tau)
            * theta(mu, yg - 0.5 * tau * g, tau)
            / self._norm
        )
        summ = (
            np.exp(1j * (x[..., None] + y[..., None]) * g)
            * theta(mu, xg + 0.5 * tau * g, tau)
            * theta(mu, yg + 0.5 * tau * g, tau)
            / self._norm
        )
        sign = {"B": 1.0, "C": -1.0, "D": 1.0}[self.family]
        return np.sum((diff + sign * summ) * w, axis=-1) / (2.0 * math.pi)
