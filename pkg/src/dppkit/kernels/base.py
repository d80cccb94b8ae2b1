"""Core types shared by every kernel family: points, base measures, kernels."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping

import numpy as np
from scipy.special import erf, gammainc

__all__ = [
    "BaseMeasure",
    "ComplexNormal",
    "CylinderStrip",
    "GammaMeasure",
    "GenericMeasure",
    "Kernel",
    "KernelSpec",
    "LebesgueLine",
    "NormalMeasure",
    "Point",
    "ProjectionKernel",
    "SphereArea",
    "TorusRect",
    "UniformAngle",
    "sphere_surface_area",
]


def sphere_surface_area(d: int) -> float:
    """Total area of the d-sphere embedded in R^(d+1)."""
    return 2.0 * math.pi ** ((d + 1) / 2.0) / math.gamma((d + 1) / 2.0)


@dataclass(frozen=True)
class Point:
    """A point of a base space, tagged with the space it lives in."""

    space: str
    coords: tuple

    def __post_init__(self):
        if self.space in ("circle", "interval_0_pi"):
            theta = float(np.asarray(self.coords).reshape(-1)[0])
            period = 2.0 * math.pi if self.space == "circle" else math.pi
            object.__setattr__(self, "coords", (theta % period,))

    @property
    def value(self):
        c = np.asarray(self.coords)
        return c[0] if c.size == 1 else c


# ---------------------------------------------------------------------------
# base measures
# ---------------------------------------------------------------------------

class BaseMeasure:
    """Reference measure of a kernel family.

    ``lebesgue_density`` is taken with respect to the natural reference of
    the space (Lebesgue measure on lines/planes, area measure on spheres).
    ``sample`` draws from the normalized measure; only finite-mass measures
    support it.
    """

    space: str = "real"

    def total_mass(self) -> float:
        raise NotImplementedError

    def lebesgue_density(self, x):
        raise NotImplementedError

    def sample(self, rng, size: int):
        raise NotImplementedError(f"{type(self).__name__} has no sampler")

    def interval_mass(self, a: float, b: float) -> float:
        raise NotImplementedError(f"{type(self).__name__} has no interval mass")


@dataclass(frozen=True)
class LebesgueLine(BaseMeasure):
    lo: float = -math.inf
    hi: float = math.inf
    space: str = "real"

    def total_mass(self):
        return self.hi - self.lo

    def lebesgue_density(self, x):
        x = np.asarray(x, dtype=float)
        return np.where((x >= self.lo) & (x <= self.hi), 1.0, 0.0)

    def interval_mass(self, a, b):
        return max(0.0, min(b, self.hi) - max(a, self.lo))


@dataclass(frozen=True)
class NormalMeasure(BaseMeasure):
    mean: float = 0.0
    var: float = 0.5
    space: str = "real"

    def total_mass(self):
        return 1.0

    def lebesgue_density(self, x):
        x = np.asarray(x, dtype=float)
        return np.exp(-((x - self.mean) ** 2) / (2.0 * self.var)) / math.sqrt(
            2.0 * math.pi * self.var
        )

    def sample(self, rng, size):
        return rng.normal(self.mean, math.sqrt(self.var), size)

    def interval_mass(self, a, b):
        s = math.sqrt(2.0 * self.var)
        return 0.5 * float(erf((b - self.mean) / s) - erf((a - self.mean) / s))


@dataclass(frozen=True)
class GammaMeasure(BaseMeasure):
    a: float = 1.0
    b: float = 1.0
    space: str = "halfline"

    def __post_init__(self):
        if self.a <= 0 or self.b <= 0:
            raise ValueError("gamma parameters must be positive")

    def total_mass(self):
        return 1.0

    def lebesgue_density(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        pos = x > 0
        out[pos] = (
            self.b**self.a
            / math.gamma(self.a)
            * x[pos] ** (self.a - 1.0)
            * np.exp(-self.b * x[pos])
        )
        return out

    def sample(self, rng, size):
        return rng.gamma(self.a, 1.0 / self.b, size)

    def interval_mass(self, a, b):
        lo, hi = max(a, 0.0), max(b, 0.0)
        return float(gammainc(self.a, self.b * hi) - gammainc(self.a, self.b * lo))


@dataclass(frozen=True)
class UniformAngle(BaseMeasure):
    """Normalized uniform measure d(theta)/length on [0, length)."""

    length: float = 2.0 * math.pi
    space: str = "circle"

    def total_mass(self):
        return 1.0

    def lebesgue_density(self, x):
        x = np.asarray(x, dtype=float)
        return np.where((x >= 0) & (x <= self.length), 1.0 / self.length, 0.0)

    def sample(self, rng, size):
        return rng.uniform(0.0, self.length, size)

    def interval_mass(self, a, b):
        return max(0.0, min(b, self.length) - max(a, 0.0)) / self.length


@dataclass(frozen=True)
class ComplexNormal(BaseMeasure):
    """Standard complex normal on C^d; density e^{-|x|^2}/pi^d."""

    d: int = 1
    space: str = "complex"

    def __post_init__(self):
        object.__setattr__(self, "space", "complex" if self.d == 1 else "complex_d")

    def total_mass(self):
        return 1.0

    def lebesgue_density(self, x):
        x = np.asarray(x, dtype=complex)
        if self.d == 1:
            sq = np.abs(x) ** 2
        else:
            sq = np.sum(np.abs(x) ** 2, axis=-1)
        return np.exp(-sq) / math.pi**self.d

    def sample(self, rng, size):
        shape = (size,) if self.d == 1 else (size, self.d)
        z = rng.normal(0.0, math.sqrt(0.5), shape) + 1j * rng.normal(
            0.0, math.sqrt(0.5), shape
        )
        return z


@dataclass(frozen=True)
class SphereArea(BaseMeasure):
    """Surface area measure on the d-sphere; points are unit vectors.

    For d = 2 the sampler uses the cylindrical (Archimedes) projection;
    higher d normalizes Gaussian vectors.
    """

    d: int = 2
    space: str = "sphere"

    def total_mass(self):
        return sphere_surface_area(self.d)

    def lebesgue_density(self, x):
        x = np.asarray(x, dtype=float)
        return np.ones(x.shape[:-1])

    def sample(self, rng, size):
        if self.d == 2:
            z = rng.uniform(-1.0, 1.0, size)
            phi = rng.uniform(0.0, 2.0 * math.pi, size)
            s = np.sqrt(1.0 - z * z)
            return np.stack([s * np.cos(phi), s * np.sin(phi), z], axis=-1)
        g = rng.normal(size=(size, self.d + 1))
        return g / np.linalg.norm(g, axis=-1, keepdims=True)


@dataclass(frozen=True)
class TorusRect(BaseMeasure):
    """Lebesgue measure on the fundamental rectangle of a flat torus."""

    tau: complex = 1.0j
    space: str = "torus"

    def periods(self):
        return 2.0 * math.pi, 2.0 * math.pi * complex(self.tau).imag

    def total_mass(self):
        px, py = self.periods()
        return px * py

    def lebesgue_density(self, x):
        x = np.asarray(x, dtype=complex)
        return np.ones(x.shape)

    def sample(self, rng, size):
        px, py = self.periods()
        return rng.uniform(0.0, px, size) + 1j * rng.uniform(0.0, py, size)


@dataclass(frozen=True)
class CylinderStrip(BaseMeasure):
    """N(0, 1/4) in the axial direction times the normalized angle measure."""

    alpha: float = 1.0
    space: str = "cylinder"

    def circumference(self):
        return 2.0 * math.pi * self.alpha

    def total_mass(self):
        return 1.0

    def lebesgue_density(self, x):
        x = np.asarray(x, dtype=complex)
        return (
            math.sqrt(2.0 / math.pi)
            * np.exp(-2.0 * x.real**2)
            / self.circumference()
        )

    def sample(self, rng, size):
        xr = rng.normal(0.0, 0.5, size)
        xi = rng.uniform(0.0, self.circumference(), size)
        return xr + 1j * xi


@dataclass(frozen=True)
class GenericMeasure(BaseMeasure):
    """Measure described by callables; produced by kernel transforms."""

    density_fn: Callable = None
    mass: float = math.inf
    space: str = "real"

    def total_mass(self):
        return self.mass

    def lebesgue_density(self, x):
        return self.density_fn(x)


# ---------------------------------------------------------------------------
# kernel spec and kernels
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KernelSpec:
    """Family tag plus the family-specific parameter record."""

    family: str
    params: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "params", dict(self.params))

    def get(self, key, default=None):
        return self.params.get(key, default)

    def to_config(self) -> str:
        lines = [f"family = {self.family}"]
        for key, val in self.params.items():
            lines.append(f"{key} = {val}")
        return "\n".join(lines) + "\n"


class Kernel:
    """A correlation kernel together with its base measure.

    ``eval`` is elementwise and broadcasts; ``matrix`` builds the pairwise
    Gram matrix.  Finite-rank families expose their orthonormal basis via
    ``basis_matrix`` and report ``rank``; infinite families report ``None``.
    """

    point_ndim = 0  # 0: scalar coordinates, 1: vector coordinates

    def __init__(self, spec: KernelSpec, base: BaseMeasure, rank=None):
        self.spec = spec
        self.base = base
        self.rank = rank

    @property
    def space(self):
        return self.base.space

    def eval(self, x, y):
        raise NotImplementedError

    def matrix(self, xs, ys=None):
        if ys is None:
            ys = xs
        xs = np.asarray(xs)
        ys = np.asarray(ys)
        if self.point_ndim == 0:
            return self.eval(xs[:, None], ys[None, :])
        return self.eval(xs[:, None, :], ys[None, :, :])

    def density(self, x):
        """Density of points with respect to the kernel's base measure."""
        return np.real(self.eval(x, x))

    def lebesgue_density(self, x):
        return self.density(x) * self.base.lebesgue_density(x)

    def basis_matrix(self, points) -> np.ndarray:
        raise NotImplementedError(f"{self.spec.family} exposes no finite basis")


class ProjectionKernel(Kernel):
    """Finite-rank kernel K(x, y) = sum_n phi_n(x) conj(phi_n(y)).

    Subclasses provide ``basis_matrix``; ``eval`` defaults to the basis sum
    and may be overridden with a closed form.
    """

    def __init__(self, spec, base, rank):
        super().__init__(spec, base, rank=rank)

    def eval(self, x, y):
        x = np.asarray(x)
        y = np.asarray(y)
        shape = np.broadcast_shapes(
            x.shape[: x.ndim - self.point_ndim], y.shape[: y.ndim - self.point_ndim]
        )
        if self.point_ndim == 0:
            xb = np.broadcast_to(x, shape).reshape(-1)
            yb = np.broadcast_to(y, shape).reshape(-1)
        else:
            k = x.shape[-1]
            xb = np.broadcast_to(x, shape + (k,)).reshape(-1, k)
            yb = np.broadcast_to(y, shape + (k,)).reshape(-1, k)
        bx = self.basis_matrix(xb)
        by = self.basis_matrix(yb)
        vals = np.sum(bx * np.conj(by), axis=-1)
        return vals.reshape(shape) if shape else vals.reshape(())

    def matrix(self, xs, ys=None):
        bx = self.basis_matrix(np.asarray(xs))
        by = bx if ys is None else self.basis_matrix(np.asarray(ys))
        return bx @ np.conj(by.T)
