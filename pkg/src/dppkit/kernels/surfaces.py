"""Kernel families on curved and higher-dimensional spaces: the sphere,
flat tori, cylinders, and the two one-parameter families on R^d and C^d."""

from __future__ import annotations

import math

import numpy as np

from ..quadrules import gauss_legendre
from ..specfun import _bessel_any, bessel_j, theta, ultraspherical, jacobi_poly
from .base import (
    ComplexNormal,
    CylinderStrip,
    GenericMeasure,
    Kernel,
    KernelSpec,
    ProjectionKernel,
    SphereArea,
    TorusRect,
    sphere_surface_area,
)
from .circular import _window_kind, affine_ladder, theta_window

__all__ = [
    "CylinderInfKernel",
    "CylinderKernel",
    "EuclidKernel",
    "HarmonicKernel",
    "HeisenbergKernel",
    "SphericalEnsembleKernel",
    "TorusKernel",
    "angles_to_vec",
    "euclid_fourier_form",
    "euclid_radial_form",
    "harmonic_dimension",
    "harmonic_gegenbauer_form",
    "harmonic_jacobi_form",
    "harmonic_rank",
    "vec_to_angles",
]


def angles_to_vec(theta_phi):
    """(theta, phi) on the 2-sphere to unit vectors in R^3."""
    tp = np.asarray(theta_phi, dtype=float)
    th, ph = tp[..., 0], tp[..., 1]
    s = np.sin(th)
    return np.stack([s * np.cos(ph), s * np.sin(ph), np.cos(th)], axis=-1)


def vec_to_angles(v):
    """Unit vectors in R^3 to (theta, phi), theta in [0, pi], phi in [0, 2 pi)."""
    v = np.asarray(v, dtype=float)
    th = np.arccos(np.clip(v[..., 2], -1.0, 1.0))
    ph = np.mod(np.arctan2(v[..., 1], v[..., 0]), 2.0 * math.pi)
    return np.stack([th, ph], axis=-1)


class _SphereAngles(SphereArea):
    """Area measure with points stored as (theta, phi) pairs."""

    def __init__(self):
        super().__init__(d=2, space="sphere_angles")

    def sample(self, rng, size):
        return vec_to_angles(SphereArea.sample(self, rng, size))


class SphericalEnsembleKernel(ProjectionKernel):
    """Rank-N rotation-invariant kernel on the 2-sphere built from the
    monomial ladder in the half-angle variables."""

    point_ndim = 1

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("spherical ensemble requires n >= 1")
        super().__init__(KernelSpec("spherical", {"n": n}), _SphereAngles(), n)
        self.n = n
        k = np.arange(n)
        # log of 1/h_k = N/(4 pi) * binom(N-1, k)
        self._lognorm = 0.5 * (
            math.log(n / (4.0 * math.pi))
            + np.array(
                [
                    math.lgamma(n)
                    - math.lgamma(kk + 1.0)
                    - math.lgamma(n - kk)
                    for kk in k
                ]
            )
        )

    def basis_matrix(self, points):
        tp = np.asarray(points, dtype=float)
        th, ph = tp[..., 0], tp[..., 1]
        k = np.arange(self.n)
        s2 = np.maximum(np.sin(0.5 * th), 1e-300)[..., None]
        c2 = np.maximum(np.cos(0.5 * th), 1e-300)[..., None]
        logmag = k * np.log(s2) + (self.n - 1 - k) * np.log(c2) + self._lognorm
        return np.exp(logmag - 1j * k * ph[..., None])

    def eval(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        th, ph = x[..., 0], x[..., 1]
        tq, pq = y[..., 0], y[..., 1]
        core = np.exp(-1j * (ph - pq)) * np.sin(0.5 * th) * np.sin(0.5 * tq) + np.cos(
            0.5 * th
        ) * np.cos(0.5 * tq)
        return self.n / (4.0 * math.pi) * core ** (self.n - 1)


# ---------------------------------------------------------------------------
# flat torus
# ---------------------------------------------------------------------------

def _torus_lognorms(family: str, n: int, tau: complex) -> np.ndarray:
    """log h_n: squared norms of the doubly-quasi-periodic ladder."""
    size, j = affine_ladder(family, n)
    t = complex(tau).imag
    base = math.log(8.0 * math.pi**2) + 0.5 * math.log(t / (2.0 * size))
    logs = base + 2.0 * math.pi * t * j * j / size
    if family == "A":
        logs = logs - math.log(2.0)
    elif family in ("B", "Bv"):
        logs[0] += math.log(2.0)
    elif family == "D":
        logs[0] += math.log(2.0)
        if n >= 2:
            logs[-1] += math.log(2.0)
    return logs


class TorusKernel(ProjectionKernel):
    """Rank-N kernels on the torus with periods (2 pi, 2 pi Im tau);
    seven families sharing the affine index ladder."""

    def __init__(self, family: str, n: int, tau: complex):
        tau = complex(tau)
        if tau.imag <= 0.0 or abs(tau.real) > 1e-12:
            raise ValueError("torus kernel requires pure imaginary tau")
        if n < 1:
            raise ValueError("torus kernel requires n >= 1")
        size, j = affine_ladder(family, n)
        if 2.0 * math.pi * tau.imag * n >= 650.0:
            raise ValueError("rank too large for double precision at this tau")
        super().__init__(
            KernelSpec(f"torus_{family.lower()}", {"n": n, "tau": tau}),
            TorusRect(tau),
            n,
        )
        self.family = family
        self.n = n
        self.tau = tau
        self.size, self.j = size, j
        self.kind = _window_kind(family)
        self._lognorm = _torus_lognorms(family, n, tau)

    def basis_matrix(self, points):
        x = np.asarray(points, dtype=complex).reshape(-1)
        t = self.tau.imag
        sigma = (self.j / self.size)[None, :]
        z = (self.size * x / (2.0 * math.pi))[:, None]
        pref = np.exp(
            (-self.size * x.imag**2 / (4.0 * math.pi * t))[:, None]
            - 0.5 * self._lognorm[None, :]
        )
        return pref * theta_window(self.kind, sigma, z, self.size * self.tau)


# ---------------------------------------------------------------------------
# cylinders
# ---------------------------------------------------------------------------

class CylinderKernel(ProjectionKernel):
    """Rank-N kernels on the infinite cylinder of circumference 2 pi alpha;
    families A, B, C, D of the classical index ladder."""

    def __init__(self, family: str, n: int, alpha: float):
        if family not in ("A", "B", "C", "D"):
            raise ValueError(f"unknown cylinder family {family!r}")
        if n < 1:
            raise ValueError("cylinder kernel requires n >= 1")
        if alpha <= 0:
            raise ValueError("cylinder kernel requires alpha > 0")
        super().__init__(
            KernelSpec(f"cylinder_{family.lower()}", {"n": n, "alpha": alpha}),
            CylinderStrip(alpha),
            n,
        )
        self.family = family
        self.n = n
        self.alpha = alpha
        size, j = affine_ladder(family, n)
        self.freq = size - 2.0 * j

    def basis_matrix(self, points):
        x = np.asarray(points, dtype=complex)[..., None]
        a = self.alpha
        f = self.freq[None, :]
        damp = np.exp(-(f * f) / (16.0 * a * a))
        if self.family == "A":
            return damp * np.exp(-f * x / (2.0 * a))
        if self.family in ("B", "C"):
            return math.sqrt(2.0) * damp * np.sinh(f * x / (2.0 * a))
        out = math.sqrt(2.0) * damp * np.cosh(f * x / (2.0 * a))
        out[..., self.freq == 0.0] = 1.0
        return out


class CylinderInfKernel(Kernel):
    """Rank-infinity limits of the cylinder families, written with theta
    functions of nome parameter i/(2 pi alpha^2)."""

    _VARIANTS = ("a_even", "a_odd", "b", "c", "d")

    def __init__(self, variant: str, alpha: float):
        if variant not in self._VARIANTS:
            raise ValueError(f"unknown cylinder limit variant {variant!r}")
        if alpha <= 0:
            raise ValueError("cylinder kernel requires alpha > 0")
        super().__init__(
            KernelSpec(f"cylinder_inf_{variant}", {"alpha": alpha}),
            CylinderStrip(alpha),
        )
        self.variant = variant
        self.alpha = alpha
        self._mod = 1j / (2.0 * math.pi * alpha**2)

    def eval(self, x, y):
        x = np.asarray(x, dtype=complex)
        y = np.asarray(y, dtype=complex)
        a = self.alpha
        vplus = 1j * (x + np.conj(y)) / (2.0 * math.pi * a)
        if self.variant == "a_even":
            return theta(2, vplus, self._mod)
        if self.variant == "a_odd":
            return theta(3, vplus, self._mod)
        vminus = 1j * (x - np.conj(y)) / (2.0 * math.pi * a)
        if self.variant == "b":
            return 0.5 * (theta(2, vplus, self._mod) - theta(2, vminus, self._mod))
        if self.variant == "c":
            return 0.5 * (theta(3, vplus, self._mod) - theta(3, vminus, self._mod))
        return 0.5 * (theta(3, vplus, self._mod) + theta(3, vminus, self._mod))


# ---------------------------------------------------------------------------
# harmonic ensembles on S^d and their R^d limit family
# ---------------------------------------------------------------------------

def harmonic_dimension(d: int, k: int) -> int:
    """Dimension of the degree-k harmonic subspace on the d-sphere."""
    if k == 0:
        return 1
    return (
        (d + 2 * k - 1)
        * math.factorial(d + k - 2)
        // (math.factorial(d - 1) * math.factorial(k))
    )


def harmonic_rank(d: int, l: int) -> int:
    """Number of points N(d, L) of the harmonic ensemble."""
    return sum(harmonic_dimension(d, k) for k in range(l))


def harmonic_jacobi_form(d: int, l: int, t):
    """Single-Jacobi-polynomial closed form of the harmonic-ensemble kernel."""
    omega = sphere_surface_area(d)
    n = harmonic_rank(d, l)
    binom = math.exp(
        math.lgamma(l + 0.5 * d) - math.lgamma(l) - math.lgamma(0.5 * d + 1.0)
    )
    return n / (omega * binom) * jacobi_poly(l - 1, 0.5 * d, 0.5 * d - 1.0, t)


def harmonic_gegenbauer_form(d: int, l: int, t):
    """Gegenbauer-sum form, valid for d >= 2."""
    from ..specfun import gegenbauer

    if d < 2:
        raise ValueError("gegenbauer-sum form needs d >= 2")
    omega = sphere_surface_area(d)
    t = np.asarray(t, dtype=float)
    acc = np.zeros_like(t)
    for k in range(l):
        acc = acc + (d - 1.0 + 2.0 * k) / (d - 1.0) * gegenbauer(k, 0.5 * (d - 1), t)
    return acc / omega


def _legendre_assoc(lmax: int, m: int, x):
    """Associated Legendre P_l^m(x) for l = m..lmax, by upward recurrence."""
    x = np.asarray(x, dtype=float)
    s = np.sqrt(np.maximum(1.0 - x * x, 0.0))
    pmm = np.ones_like(x)
    for i in range(1, m + 1):
        pmm = -pmm * (2.0 * i - 1.0) * s
    out = [pmm]
    if lmax > m:
        pm1 = x * (2.0 * m + 1.0) * pmm
        out.append(pm1)
        for l in range(m + 2, lmax + 1):
            pm1, pmm = (
                ((2.0 * l - 1.0) * x * pm1 - (l + m - 1.0) * pmm) / (l - m),
                pm1,
            )
            out.append(pm1)
    return np.stack(out, axis=-1)  # (..., lmax - m + 1)


class HarmonicKernel(ProjectionKernel):
    """Harmonic ensemble on S^d: all harmonic subspaces of degree < L.

    Points are unit vectors in R^(d+1).  A sampling basis is available for
    d in {1, 2}; the kernel itself is defined for every d >= 1 through the
    normalized ultraspherical polynomials.
    """

    point_ndim = 1

    def __init__(self, d: int, l: int):
        if d < 1 or l < 1:
            raise ValueError("harmonic ensemble requires d >= 1 and l >= 1")
        super().__init__(
            KernelSpec("harmonic", {"d": d, "l": l}),
            SphereArea(d),
            harmonic_rank(d, l),
        )
        self.d = d
        self.l = l
        self._dims = np.array([harmonic_dimension(d, k) for k in range(l)], dtype=float)
        self._omega = sphere_surface_area(d)

    def eval(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        t = np.clip(np.sum(x * y, axis=-1), -1.0, 1.0)
        acc = np.zeros_like(t)
        lam = 0.5 * (self.d - 1.0)
        for k in range(self.l):
            acc = acc + self._dims[k] * ultraspherical(k, lam, t)
        return (acc / self._omega) + 0.0j

    def basis_matrix(self, points):
        v = np.asarray(points, dtype=float)
        if self.d == 1:
            thetas = np.arctan2(v[..., 0], v[..., 1])
            cols = [np.full(thetas.shape, 1.0 / math.sqrt(2.0 * math.pi)) + 0.0j]
            for k in range(1, self.l):
                cols.append(np.cos(k * thetas) / math.sqrt(math.pi) + 0.0j)
                cols.append(np.sin(k * thetas) / math.sqrt(math.pi) + 0.0j)
            return np.stack(cols, axis=-1)
        if self.d == 2:
            tp = vec_to_angles(v)
            ct = np.cos(tp[..., 0])
            ph = tp[..., 1]
            cols = []
            for m in range(self.l):
                pl = _legendre_assoc(self.l - 1, m, ct)  # degrees m..l-1
                for i, l in enumerate(range(m, self.l)):
                    norm = math.sqrt(
                        (2.0 * l + 1.0)
                        / (4.0 * math.pi)
                        * math.exp(math.lgamma(l - m + 1.0) - math.lgamma(l + m + 1.0))
                    )
                    ylm = norm * pl[..., i] * np.exp(1j * m * ph)
                    cols.append(ylm)
                    if m > 0:
                        cols.append((-1.0) ** m * np.conj(ylm))
            return np.stack(cols, axis=-1)
        raise NotImplementedError("sampling basis implemented for d <= 2 only")


class HeisenbergKernel(Kernel):
    """exp of the Hermitian inner product on C^d, d >= 1."""

    point_ndim = 1

    def __init__(self, d: int):
        if d < 1:
            raise ValueError("dimension must be positive")
        super().__init__(KernelSpec("heisenberg", {"d": d}), ComplexNormal(d))
        self.d = d

    def eval(self, x, y):
        x = np.asarray(x, dtype=complex)
        y = np.asarray(y, dtype=complex)
        return np.exp(np.sum(x * np.conj(y), axis=-1))


class EuclidKernel(Kernel):
    """Radial Bessel kernel on R^d, the flat-space limit of the harmonic
    ensembles; reduces to the sinc kernel at d = 1."""

    point_ndim = 1

    def __init__(self, d: int):
        if d < 1:
            raise ValueError("dimension must be positive")
        base = GenericMeasure(
            density_fn=lambda x: np.ones(np.asarray(x).shape[:-1]),
            mass=math.inf,
            space="real_d",
        )
        super().__init__(KernelSpec("euclid", {"d": d}), base)
        self.d = d
        self._diag = 1.0 / (
            2.0**d * math.pi ** (d / 2.0) * math.gamma(0.5 * d + 1.0)
        )

    def radial(self, r):
        r = np.asarray(r, dtype=float)
        near = r < 1e-6
        rsafe = np.where(near, 1.0, r)
        out = (
            _bessel_any(0.5 * self.d, rsafe)
            / (2.0 * math.pi * rsafe) ** (0.5 * self.d)
        )
        return np.where(near, self._diag, out)

    def eval(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        r = np.linalg.norm(x - y, axis=-1)
        return self.radial(r) + 0.0j


def euclid_radial_form(d: int, r, nodes: int = 256):
    """Radial-integral form of the flat-space kernel."""
    s, w = gauss_legendre(nodes, 0.0, 1.0)
    r = np.asarray(r, dtype=float)[..., None]
    vals = s ** (0.5 * d) * _bessel_any(0.5 * d - 1.0, r * s)
    acc = np.sum(vals * w, axis=-1)
    rr = np.squeeze(r, axis=-1)
    return acc / ((2.0 * math.pi) ** (0.5 * d) * rr ** (0.5 * d - 1.0))


def euclid_fourier_form(d: int, r, nodes: int = 128):
    """Unit-ball Fourier integral form, d <= 3."""
    r = np.asarray(r, dtype=float)
    if d == 1:
        g, w = gauss_legendre(nodes, -1.0, 1.0)
        return np.sum(np.cos(r[..., None] * g) * w, axis=-1) / (2.0 * math.pi)
    if d == 2:
        s, ws = gauss_legendre(nodes, 0.0, 1.0)
        th, wt = gauss_legendre(nodes, 0.0, 2.0 * math.pi)
        phase = np.cos(r[..., None, None] * s[:, None] * np.cos(th[None, :]))
        return np.einsum("...st,s,t->...", phase, s * ws, wt) / (2.0 * math.pi) ** 2
    if d == 3:
        s, ws = gauss_legendre(nodes, 0.0, 1.0)
        c, wc = gauss_legendre(nodes, -1.0, 1.0)
        phase = np.cos(r[..., None, None] * s[:, None] * c[None, :])
        return (
            2.0
            * math.pi
            * np.einsum("...sc,s,c->...", phase, s * s * ws, wc)
            / (2.0 * math.pi) ** 3
        )
    raise ValueError("fourier form implemented for d <= 3")
