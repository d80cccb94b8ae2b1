"""The kernel zoo: constructors for every implemented correlation-kernel
family, the transform algebra, and joint-density evaluation."""

from __future__ import annotations

import math

import numpy as np

from ..denominators import RootSystemTag, macdonald
from ..specfun import theta
from .base import (
    BaseMeasure,
    ComplexNormal,
    CylinderStrip,
    GammaMeasure,
    GenericMeasure,
    Kernel,
    KernelSpec,
    LebesgueLine,
    NormalMeasure,
    Point,
    ProjectionKernel,
    SphereArea,
    TorusRect,
    UniformAngle,
    sphere_surface_area,
)
from .circular import AffineCircleKernel, CircularKernel
from .classical import (
    HermiteKernel,
    LaguerreKernel,
    discrete_hermite,
    discrete_hermite_quad,
    discrete_laguerre,
    discrete_laguerre_quad,
)
from .infinite import (
    AiryKernel,
    BesselKernel,
    SincKernel,
    ThetaLineKernel,
    airy_kernel_integral,
    bessel_kernel_integral,
    sinc_kernel_integral,
)
from .planar import (
    GinibreKernel,
    GinibreTypeKernel,
    WeylHeisenbergKernel,
    bargmann_fock_partial,
    complex_hermite,
    wh_closed_form,
)
from .surfaces import (
    CylinderInfKernel,
    CylinderKernel,
    EuclidKernel,
    HarmonicKernel,
    HeisenbergKernel,
    SphericalEnsembleKernel,
    TorusKernel,
    angles_to_vec,
    euclid_fourier_form,
    euclid_radial_form,
    harmonic_dimension,
    harmonic_gegenbauer_form,
    harmonic_jacobi_form,
    harmonic_rank,
    vec_to_angles,
)
from .transforms import lebesgue_form, transform

__all__ = [
    "AffineCircleKernel",
    "AiryKernel",
    "BaseMeasure",
    "BesselKernel",
    "CircularKernel",
    "ComplexNormal",
    "CylinderInfKernel",
    "CylinderKernel",
    "CylinderStrip",
    "EuclidKernel",
    "GammaMeasure",
    "GenericMeasure",
    "GinibreKernel",
    "GinibreTypeKernel",
    "HarmonicKernel",
    "HeisenbergKernel",
    "HermiteKernel",
    "Kernel",
    "KernelSpec",
    "LaguerreKernel",
    "LebesgueLine",
    "NormalMeasure",
    "Point",
    "ProjectionKernel",
    "SincKernel",
    "SphereArea",
    "SphericalEnsembleKernel",
    "ThetaLineKernel",
    "TorusKernel",
    "TorusRect",
    "UniformAngle",
    "WeylHeisenbergKernel",
    "airy_kernel_integral",
    "angles_to_vec",
    "bargmann_fock_partial",
    "bessel_kernel_integral",
    "complex_hermite",
    "discrete_hermite",
    "discrete_hermite_quad",
    "discrete_laguerre",
    "discrete_laguerre_quad",
    "euclid_fourier_form",
    "euclid_radial_form",
    "harmonic_dimension",
    "harmonic_gegenbauer_form",
    "harmonic_jacobi_form",
    "harmonic_rank",
    "joint_density_unnormalized",
    "lebesgue_form",
    "make_kernel",
    "product_form_density",
    "sinc_kernel_integral",
    "sphere_surface_area",
    "transform",
    "vec_to_angles",
    "wh_closed_form",
]


def _require(spec: KernelSpec, key: str):
    if key not in spec.params:
        raise ValueError(f"family {spec.family!r} requires parameter {key!r}")
    return spec.params[key]


_BUILDERS = {}


def _register(name):
    def deco(fn):
        _BUILDERS[name] = fn
        return fn

    return deco


@_register("hermite")
def _(spec):
    return HermiteKernel(int(_require(spec, "n")))


@_register("laguerre")
def _(spec):
    return LaguerreKernel(int(_require(spec, "n")), float(_require(spec, "nu")))


for _fam in ("a", "b", "c", "d"):
    @_register(f"circular_{_fam}")
    def _(spec, _f=_fam.upper()):
        return CircularKernel(_f, int(_require(spec, "n")))

    @_register(f"cylinder_{_fam}")
    def _(spec, _f=_fam.upper()):
        return CylinderKernel(
            _f, int(_require(spec, "n")), float(_require(spec, "alpha"))
        )

_AFFINE_NAMES = {
    "a": "A", "b": "B", "bv": "Bv", "c": "C", "cv": "Cv", "bc": "BC", "d": "D",
}

for _fam, _tag in _AFFINE_NAMES.items():
    @_register(f"affine_{_fam}")
    def _(spec, _f=_tag):
        return AffineCircleKernel(
            _f, int(_require(spec, "n")), complex(_require(spec, "tau"))
        )

    @_register(f"torus_{_fam}")
    def _(spec, _f=_tag):
        return TorusKernel(
            _f, int(_require(spec, "n")), complex(_require(spec, "tau"))
        )

for _fam in ("a", "b", "c", "d"):
    @_register(f"theta_{_fam}")
    def _(spec, _f=_fam.upper()):
        return ThetaLineKernel(_f, complex(_require(spec, "tau")))

for _var in ("a_even", "a_odd", "b", "c", "d"):
    @_register(f"cylinder_inf_{_var}")
    def _(spec, _v=_var):
        return CylinderInfKernel(_v, float(_require(spec, "alpha")))

for _var in ("a", "c", "d"):
    @_register(f"ginibre_{_var}")
    def _(spec, _v=_var.upper()):
        return GinibreKernel(_v)


@_register("sinc")
def _(spec):
    return SincKernel()


@_register("airy")
def _(spec):
    return AiryKernel()


@_register("bessel")
def _(spec):
    return BesselKernel(float(_require(spec, "nu")))


@_register("ginibre_type")
def _(spec):
    return GinibreTypeKernel(int(_require(spec, "q")))


@_register("weyl_heisenberg")
def _(spec):
    return WeylHeisenbergKernel(
        window=spec.get("window", "gauss"),
        q=int(spec.get("q", 0)),
        parity=spec.get("parity", "all"),
    )


@_register("spherical")
def _(spec):
    return SphericalEnsembleKernel(int(_require(spec, "n")))


@_register("harmonic")
def _(spec):
    return HarmonicKernel(int(_require(spec, "d")), int(_require(spec, "l")))


@_register("heisenberg")
def _(spec):
    return HeisenbergKernel(int(_require(spec, "d")))


@_register("euclid")
def _(spec):
    return EuclidKernel(int(_require(spec, "d")))


def make_kernel(spec: KernelSpec) -> Kernel:
    """Build the kernel described by a spec; raises on unknown families or
    parameter-domain violations, naming the violated constraint."""
    if isinstance(spec, str):
        spec = KernelSpec(spec)
    builder = _BUILDERS.get(spec.family)
    if builder is None:
        raise ValueError(f"unknown kernel family {spec.family!r}")
    return builder(spec)


def kernel_families() -> list[str]:
    return sorted(_BUILDERS)


# ---------------------------------------------------------------------------
# joint densities
# ---------------------------------------------------------------------------

def joint_density_unnormalized(kernel: Kernel, points) -> float:
    """det[K(x_j, x_k)] over a configuration of rank-many points."""
    if kernel.rank is None:
        raise ValueError("joint density needs a finite-rank kernel")
    pts = np.asarray(points)
    count = pts.shape[0]
    if count != kernel.rank:
        raise ValueError(
            f"configuration has {count} points, kernel rank is {kernel.rank}"
        )
    m = kernel.matrix(pts)
    val = np.linalg.det(m)
    return float(np.real(val))


def product_form_density(kernel: Kernel, points) -> float:
    """Reference product-form joint density (unnormalized, w.r.t. the
    Lebesgue/area reference); implemented for the families whose squared
    denominator formula is available as an independent cross-check."""
    fam = kernel.spec.family
    pts = np.asarray(points)
    if fam == "hermite":
        x = pts.astype(float)
        vand = np.prod([x[k] - x[j] for j in range(len(x)) for k in range(j + 1, len(x))])
        return float(vand**2 * np.exp(-np.sum(x * x)))
    if fam == "laguerre":
        nu = kernel.spec.get("nu")
        y = pts.astype(float)
        vand = np.prod([y[k] - y[j] for j in range(len(y)) for k in range(j + 1, len(y))])
        return float(vand**2 * np.prod(y**nu * np.exp(-y)))
    if fam == "circular_a":
        x = pts.astype(float)
        return float(
            np.prod(
                [
                    np.sin(0.5 * (x[k] - x[j])) ** 2
                    for j in range(len(x))
                    for k in range(j + 1, len(x))
                ]
            )
        )
    if fam in ("circular_b", "circular_c", "circular_d"):
        x = pts.astype(float)
        pair = np.prod(
            [
                np.sin(0.5 * (x[k] - x[j])) ** 2 * np.sin(0.5 * (x[k] + x[j])) ** 2
                for j in range(len(x))
                for k in range(j + 1, len(x))
            ]
        )
        if fam == "circular_b":
            return float(pair * np.prod(np.sin(0.5 * x) ** 2))
        if fam == "circular_c":
            return float(pair * np.prod(np.sin(x) ** 2))
        return float(pair)
    if fam.startswith("affine_"):
        tau = kernel.tau
        size = kernel.size
        tag = RootSystemTag(_AFFINE_NAMES[fam.split("_")[1]], kernel.n)
        x = pts.astype(float)
        w = macdonald(tag, x / (2.0 * math.pi), tau / size)
        if fam == "affine_a":
            mu = 0 if kernel.n % 2 == 0 else 3
            w = w * complex(
                np.asarray(theta(mu, np.sum(x) / (2.0 * math.pi), tau / size))
            )
        return float(np.abs(w) ** 2)
    if fam.startswith("torus_"):
        tau = kernel.tau
        size = kernel.size
        tag = RootSystemTag(_AFFINE_NAMES[fam.split("_")[1]], kernel.n)
        x = pts.astype(complex)
        w = macdonald(tag, x / (2.0 * math.pi), tau)
        if fam == "torus_a":
            mu = 0 if kernel.n % 2 == 0 else 3
            w = w * complex(np.asarray(theta(mu, np.sum(x) / (2.0 * math.pi), tau)))
        damp = math.exp(
            -size * float(np.sum(x.imag**2)) / (2.0 * math.pi * tau.imag)
        )
        return float(damp * np.abs(w) ** 2)
    if fam.startswith("cylinder_") and kernel.rank is not None:
        alpha = kernel.alpha
        x = pts.astype(complex)
        pair = 1.0
        for j in range(len(x)):
            for k in range(j + 1, len(x)):
                pair *= np.abs(np.sinh((x[k] - x[j]) / (2.0 * alpha))) ** 2
                if fam != "cylinder_a":
                    pair *= np.abs(np.sinh((x[k] + x[j]) / (2.0 * alpha))) ** 2
        site = 1.0
        if fam == "cylinder_b":
            site = np.prod(np.abs(np.sinh(x / (2.0 * alpha))) ** 2)
        elif fam == "cylinder_c":
            site = np.prod(np.abs(np.sinh(x / alpha)) ** 2)
        gauss = np.exp(-2.0 * np.sum(x.real**2))
        return float(pair * site * gauss)
    if fam == "spherical":
        v = angles_to_vec(pts)
        out = 1.0
        for j in range(len(v)):
            for k in range(j + 1, len(v)):
                out *= float(np.sum((v[k] - v[j]) ** 2))
        return out
    raise ValueError(f"no product form implemented for family {fam!r}")
