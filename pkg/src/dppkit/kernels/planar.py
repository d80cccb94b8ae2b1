"""Kernels on the complex plane: the exponential kernel and its odd/even
parts, the polyanalytic extensions, and windowed time-frequency kernels."""

from __future__ import annotations

import math

import numpy as np

from ..specfun import hermite, laguerre
from .base import ComplexNormal, GenericMeasure, Kernel, KernelSpec

__all__ = [
    "GinibreKernel",
    "GinibreTypeKernel",
    "WeylHeisenbergKernel",
    "bargmann_fock_partial",
    "complex_hermite",
    "gauss_window",
    "hermite_window",
    "wh_closed_form",
]


class GinibreKernel(Kernel):
    """exp / sinh / cosh of the Hermitian product, against the complex
    normal base measure; variants tagged A, C, D."""

    def __init__(self, variant: str):
        if variant not in ("A", "C", "D"):
            raise ValueError(f"unknown ginibre variant {variant!r}")
        super().__init__(
            KernelSpec(f"ginibre_{variant.lower()}"), ComplexNormal(1)
        )
        self.variant = variant

    def eval(self, x, y):
        z = np.asarray(x, dtype=complex) * np.conj(np.asarray(y, dtype=complex))
        if self.variant == "A":
            return np.exp(z)
        if self.variant == "C":
            return np.sinh(z)
        return np.cosh(z)

    def basis_coeff(self, n: int) -> float:
        """Monomial-basis occupation: 1 if z^n / sqrt(n!) participates."""
        if self.variant == "A":
            return 1.0
        if self.variant == "C":
            return 1.0 if n % 2 == 1 else 0.0
        return 1.0 if n % 2 == 0 else 0.0


def bargmann_fock_partial(x, y, n_terms: int, parity: str = "all"):
    """Partial sums of the monomial expansion sum_n (x conj(y))^n / n!."""
    z = np.asarray(x, dtype=complex) * np.conj(np.asarray(y, dtype=complex))
    total = np.zeros_like(z)
    term = np.ones_like(z)
    for n in range(n_terms):
        keep = (
            parity == "all"
            or (parity == "odd" and n % 2 == 1)
            or (parity == "even" and n % 2 == 0)
        )
        if keep:
            total = total + term
        term = term * z / (n + 1.0)
    return total


def complex_hermite(p: int, q: int, z):
    """Complex Hermite polynomial H_{p,q}(z, conj(z)) by the explicit sum."""
    z = np.asarray(z, dtype=complex)
    zb = np.conj(z)
    total = np.zeros_like(z)
    for k in range(min(p, q) + 1):
        coeff = (
            (-1.0) ** k
            * math.factorial(k)
            * math.comb(p, k)
            * math.comb(q, k)
        )
        total = total + coeff * z ** (p - k) * zb ** (q - k)
    return total


class GinibreTypeKernel(Kernel):
    """Polyanalytic extension L_q(|x-y|^2) exp(x conj(y)), q in N_0."""

    def __init__(self, q: int):
        if q < 0:
            raise ValueError("polyanalytic index q must be nonnegative")
        super().__init__(KernelSpec("ginibre_type", {"q": q}), ComplexNormal(1))
        self.q = q

    def eval(self, x, y):
        x = np.asarray(x, dtype=complex)
        y = np.asarray(y, dtype=complex)
        d2 = np.abs(x - y) ** 2
        return laguerre(self.q, 0.0, d2) * np.exp(x * np.conj(y))

    def landau_basis(self, n: int, z):
        """Orthonormal eigenfunctions H_{n,q}/sqrt(n! q!) of the q-th level."""
        norm = math.exp(-0.5 * (math.lgamma(n + 1.0) + math.lgamma(self.q + 1.0)))
        return norm * complex_hermite(n, self.q, z)


# ---------------------------------------------------------------------------
# windowed time-frequency kernels on C (d = 1)
# ---------------------------------------------------------------------------

def gauss_window(y):
    """Unit-norm Gaussian window 2^(1/4) e^(-pi y^2)."""
    y = np.asarray(y, dtype=float)
    return 2.0**0.25 * np.exp(-math.pi * y * y)


def hermite_window(q: int, y):
    """Unit-norm Hermite window h_q."""
    y = np.asarray(y, dtype=float)
    norm = 2.0 ** (-q / 2.0 + 0.25) / math.sqrt(math.factorial(q))
    return norm * np.exp(-math.pi * y * y) * hermite(q, math.sqrt(2.0 * math.pi) * y)


class WeylHeisenbergKernel(Kernel):
    """Short-time-transform kernel for a window G with unit L2 norm.

    K(x, y) = int G(t - x_R) conj(G(t - y_R)) e^{2 pi i t (x_I - y_I)} dt,
    with respect to Lebesgue measure on C.  The integral is evaluated by
    Gauss-Hermite quadrature recentered at the window overlap; ``parity``
    restricts to the odd or even subspace.
    """

    def __init__(self, window: str = "gauss", q: int = 0, parity: str = "all",
                 nodes: int = 96):
        if window not in ("gauss", "hermite"):
            raise ValueError(f"unknown window {window!r}")
        if parity not in ("all", "odd", "even"):
            raise ValueError(f"unknown parity {parity!r}")
        params = {"window": window, "parity": parity}
        if window == "hermite":
            params["q"] = q
        base = GenericMeasure(
            density_fn=lambda x: np.ones(np.asarray(x).shape),
            mass=math.inf,
            space="complex",
        )
        super().__init__(KernelSpec("weyl_heisenberg", params), base)
        self.window = window
        self.q = q
        self.parity = parity
        t, w = np.polynomial.hermite.hermgauss(nodes)
        self._t, self._w = t, w

    def _poly_part(self, y):
        """Window divided by its Gaussian factor, evaluated stably."""
        if self.window == "gauss":
            return np.full(np.asarray(y).shape, 2.0**0.25)
        norm = 2.0 ** (-self.q / 2.0 + 0.25) / math.sqrt(math.factorial(self.q))
        return norm * hermite(self.q, math.sqrt(2.0 * math.pi) * np.asarray(y))

    def _plain(self, x, y):
        """Window overlap integral; both windows are P(y) e^{-pi y^2}, so the
        Gaussian factors combine into the e^{-s^2} Gauss-Hermite weight."""
        x = np.asarray(x, dtype=complex)
        y = np.asarray(y, dtype=complex)
        a, b = x.real, y.real
        delta = x.imag - y.imag
        c = 0.5 * (a + b)
        t = c[..., None] + self._t[None, ...] / math.sqrt(2.0 * math.pi)
        vals = (
            self._poly_part(t - a[..., None])
            * self._poly_part(t - b[..., None])
            * np.exp(2j * math.pi * t * delta[..., None])
        )
        front = np.exp(-0.5 * math.pi * (a - b) ** 2) / math.sqrt(2.0 * math.pi)
        return front * np.sum(vals * self._w, axis=-1)

    def eval(self, x, y):
        x = np.asarray(x, dtype=complex)
        y = np.asarray(y, dtype=complex)
        scalar = x.ndim == 0 and y.ndim == 0
        x, y = np.atleast_1d(x), np.atleast_1d(y)
        x, y = np.broadcast_arrays(x, y)
        if self.parity == "all":
            out = self._plain(x, y)
        elif self.parity == "odd":
            out = 0.5 * (self._plain(x, y) - self._plain(x, -y))
        else:
            out = 0.5 * (self._plain(x, y) + self._plain(x, -y))
        return out[()] if scalar else out


def wh_closed_form(x, y, variant: str = "A", q: int | None = None):
    """Gauge-conjugated Gaussian-weighted closed form of the windowed kernel.

    ``variant`` selects exp/sinh/cosh; a polyanalytic index ``q`` replaces
    the A-variant with the corresponding polyanalytic kernel.
    """
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    gauge = np.exp(1j * math.pi * (x.real * x.imag - y.real * y.imag))
    sx, sy = math.sqrt(math.pi) * x, math.sqrt(math.pi) * y
    z = sx * np.conj(sy)
    if q is not None:
        core = laguerre(q, 0.0, np.abs(sx - sy) ** 2) * np.exp(z)
    elif variant == "A":
        core = np.exp(z)
    elif variant == "C":
        core = np.sinh(z)
    else:
        core = np.cosh(z)
    damp = np.exp(-0.5 * math.pi * (np.abs(x) ** 2 + np.abs(y) ** 2))
    return gauge * core * damp
