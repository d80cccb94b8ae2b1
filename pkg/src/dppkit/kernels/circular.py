"""Finite kernels on the circle and the half-period interval.

The trigonometric ladder families (circular unitary ensemble and its
sine/cosine companions) and their theta-deformed counterparts, classified by
the same family letters.
"""

from __future__ import annotations

import math

import numpy as np

from ..specfun import theta
from .base import KernelSpec, ProjectionKernel, UniformAngle

__all__ = [
    "AffineCircleKernel",
    "CircularKernel",
    "affine_ladder",
    "theta_window",
]

_DIAG_EPS = 1e-6

# ladder constants per family: size label and index offsets
_LADDER_SIZE = {
    "A": lambda n: n,
    "B": lambda n: 2 * n - 1,
    "Bv": lambda n: 2 * n,
    "C": lambda n: 2 * (n + 1),
    "Cv": lambda n: 2 * n,
    "BC": lambda n: 2 * n + 1,
    "D": lambda n: 2 * (n - 1),
}
_LADDER_OFFSET = {
    "A": -0.5,
    "B": -1.0,
    "Bv": -1.0,
    "C": 0.0,
    "Cv": -0.5,
    "BC": 0.0,
    "D": -1.0,
}
_CLASSICAL_FAMILIES = ("A", "B", "C", "D")
_AFFINE_FAMILIES = ("A", "B", "Bv", "C", "Cv", "BC", "D")


def affine_ladder(family: str, n: int):
    """(size, j_1..j_n) index data shared by the trigonometric and theta forms."""
    size = _LADDER_SIZE[family](n)
    j = np.arange(1, n + 1) + _LADDER_OFFSET[family]
    return size, j


def _dirichlet(a: float, u):
    """sin(a u) / sin(u / 2) with the removable singularities filled in."""
    u = np.asarray(u, dtype=float)
    s = np.sin(0.5 * u)
    small = np.abs(s) < 5e-7
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.sin(a * u) / s
    if np.any(small):
        safe = 2.0 * a * np.cos(a * u) / np.cos(0.5 * u)
        out = np.where(small, safe, out)
    return out


class CircularKernel(ProjectionKernel):
    """Trigonometric ladder kernels: family A on the circle with the uniform
    measure, families B, C, D on [0, pi]."""

    def __init__(self, family: str, n: int):
        if family not in _CLASSICAL_FAMILIES:
            raise ValueError(f"unknown circular family {family!r}")
        if n < 1:
            raise ValueError("circular kernel requires n >= 1")
        base = UniformAngle(
            2.0 * math.pi if family == "A" else math.pi,
            space="circle" if family == "A" else "interval_0_pi",
        )
        super().__init__(
            KernelSpec(f"circular_{family.lower()}", {"n": n}), base, n
        )
        self.family = family
        self.n = n
        size, j = affine_ladder(family, n)
        self.freq = 0.5 * (size - 2.0 * j)  # argument multipliers in x

    def basis_matrix(self, points):
        x = np.asarray(points, dtype=float)[..., None]
        f = self.freq[None, :]
        if self.family == "A":
            return np.exp(-1j * f * x)
        if self.family in ("B", "C"):
            return math.sqrt(2.0) * np.sin(f * x).astype(complex)
        out = np.cos(f * x).astype(complex) * math.sqrt(2.0)
        out[..., self.freq == 0.0] = 1.0
        return out

    def eval(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        n = self.n
        u = x - y
        if self.family == "A":
            return _dirichlet(0.5 * n, u) + 0.0j
        v = x + y
        if self.family == "B":
            return 0.5 * (_dirichlet(n, u) - _dirichlet(n, v)) + 0.0j
        if self.family == "C":
            a = 0.5 * (2 * n + 1)
            return 0.5 * (_dirichlet(a, u) - _dirichlet(a, v)) + 0.0j
        a = 0.5 * (2 * n - 1)
        return 0.5 * (_dirichlet(a, u) + _dirichlet(a, v)) + 0.0j


# ---------------------------------------------------------------------------
# theta-deformed (affine) families
# ---------------------------------------------------------------------------

def theta_window(kind: str, sigma, z, tau):
    """Building blocks combining a plane wave with one or two theta factors."""
    sigma = np.asarray(sigma, dtype=float)
    z = np.asarray(z, dtype=complex)
    plus = np.exp(2j * math.pi * sigma * z)
    if kind == "A":
        return plus * theta(2, sigma * tau + z, tau)
    minus = np.exp(-2j * math.pi * sigma * z)
    if kind == "B":
        return plus * theta(1, sigma * tau + z, tau) - minus * theta(
            1, sigma * tau - z, tau
        )
    if kind == "C":
        return plus * theta(2, sigma * tau + z, tau) - minus * theta(
            2, sigma * tau - z, tau
        )
    if kind == "D":
        return plus * theta(2, sigma * tau + z, tau) + minus * theta(
            2, sigma * tau - z, tau
        )
    raise ValueError(f"unknown window kind {kind!r}")


def _window_kind(family: str) -> str:
    if family == "A":
        return "A"
    if family in ("B", "Bv"):
        return "B"
    if family in ("C", "Cv", "BC"):
        return "C"
    return "D"


def affine_norms(family: str, n: int, tau: complex) -> np.ndarray:
    """Squared norms of the theta-window ladder functions."""
    size, j = affine_ladder(family, n)
    vals = np.array(
        [complex(np.asarray(theta(2, 2.0 * jj * tau / size, 2.0 * tau))) for jj in j]
    )
    m = np.real(vals)
    if family == "A":
        return m
    m = 2.0 * m
    if family in ("B", "Bv"):
        m[0] *= 2.0
    elif family == "D":
        m[0] *= 2.0
        if n >= 2:
            m[-1] *= 2.0
    return m


class AffineCircleKernel(ProjectionKernel):
    """Theta-deformed ladder kernels on the circle ([0, 2 pi) for family A)
    or on [0, pi] for the other six families; tau is pure imaginary."""

    def __init__(self, family: str, n: int, tau: complex):
        if family not in _AFFINE_FAMILIES:
            raise ValueError(f"unknown affine family {family!r}")
        if n < 1:
            raise ValueError("affine kernel requires n >= 1")
        tau = complex(tau)
        if tau.imag <= 0.0 or abs(tau.real) > 1e-12:
            raise ValueError("affine kernel requires pure imaginary tau with Im > 0")
        base = UniformAngle(
            2.0 * math.pi if family == "A" else math.pi,
            space="circle" if family == "A" else "interval_0_pi",
        )
        super().__init__(
            KernelSpec(f"affine_{family.lower()}", {"n": n, "tau": tau}), base, n
        )
        self.family = family
        self.n = n
        self.tau = tau
        self.size, self.j = affine_ladder(family, n)
        self.norms = affine_norms(family, n, tau)
        self.kind = _window_kind(family)

    def basis_matrix(self, points):
        x = np.asarray(points, dtype=float).reshape(-1)
        sigma = (self.j / self.size)[None, :]
        z = (self.size * x / (2.0 * math.pi))[:, None]
        vals = theta_window(self.kind, sigma, z + 0.0j, self.tau)
        return vals / np.sqrt(self.norms)[None, :]
