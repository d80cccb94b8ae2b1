"""Weyl and Macdonald denominators for the classical and affine root systems.

Both the determinant and product sides of each identity are implemented;
the determinant side doubles as an oracle for the joint-density formulas of
the finite kernel families.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .specfun import theta

__all__ = [
    "RootSystemTag",
    "macdonald",
    "weyl_det",
    "weyl_product",
    "weyl_trig_det",
    "weyl_trig_product",
]

_CLASSICAL = ("A", "B", "C", "D")
_AFFINE = ("A", "B", "Bv", "C", "Cv", "BC", "D")


@dataclass(frozen=True)
class RootSystemTag:
    """Family label plus rank, e.g. ``RootSystemTag("C", 3)``."""

    family: str
    n: int

    def __post_init__(self):
        if self.family not in _AFFINE:
            raise ValueError(f"unknown root-system family {self.family!r}")
        if self.n < 1:
            raise ValueError("rank must be a positive integer")

    def require_classical(self):
        if self.family not in _CLASSICAL:
            raise ValueError(
                f"family {self.family!r} exists only in the affine setting"
            )


def _pairs(z):
    """Products over ordered pairs j < k feed every denominator below."""
    n = len(z)
    return [(j, k) for j in range(n) for k in range(j + 1, n)]


def weyl_product(tag: RootSystemTag, z) -> complex:
    """Product side of the classical denominator identity."""
    tag.require_classical()
    z = np.asarray(z, dtype=complex)
    if len(z) != tag.n:
        raise ValueError("coordinate count must equal the rank")
    fam, n = tag.family, tag.n
    if fam != "A" and np.any(z == 0):
        raise ValueError("zero coordinate: negative powers are undefined")
    out = 1.0 + 0.0j
    for j, k in _pairs(z):
        out *= z[k] - z[j]
        if fam != "A":
            out *= 1.0 - z[j] * z[k]
    if fam == "B":
        out *= np.prod(z ** (1 - n) * (1.0 - z))
    elif fam == "C":
        out *= np.prod(z ** (-n) * (1.0 - z * z))
    elif fam == "D":
        out *= 2.0 * np.prod(z ** (1 - n))
    return complex(out)


def weyl_det(tag: RootSystemTag, z) -> complex:
    """Determinant side of the classical denominator identity."""
    tag.require_classical()
    z = np.asarray(z, dtype=complex)
    n = tag.n
    if len(z) != n:
        raise ValueError("coordinate count must equal the rank")
    if tag.family != "A" and np.any(z == 0):
        raise ValueError("zero coordinate: negative powers are undefined")
    j = np.arange(1, n + 1)[:, None]
    if tag.family == "A":
        m = z[None, :] ** (j - 1)
    elif tag.family == "B":
        m = z[None, :] ** (j - n) - z[None, :] ** (n + 1 - j)
    elif tag.family == "C":
        m = z[None, :] ** (j - n - 1) - z[None, :] ** (n + 1 - j)
    else:  # D
        m = z[None, :] ** (j - n) + z[None, :] ** (n - j)
    return complex(np.linalg.det(m))


def classical_frequencies(family: str, n: int) -> np.ndarray:
    """The frequency ladder (size_n - 2 j_n) entering the trigonometric forms."""
    if family == "A":
        size, offsets = n, np.arange(1, n + 1) - 0.5
    elif family == "B":
        size, offsets = 2 * n - 1, np.arange(1, n + 1) - 1.0
    elif family == "C":
        size, offsets = 2 * (n + 1), np.arange(1, n + 1).astype(float)
    elif family == "D":
        size, offsets = 2 * (n - 1), np.arange(1, n + 1) - 1.0
    else:
        raise ValueError(f"family {family!r} has no classical trigonometric form")
    return size - 2.0 * offsets


def weyl_trig_det(tag: RootSystemTag, zeta) -> complex:
    """Determinant side of the trigonometric denominator identity."""
    tag.require_classical()
    zeta = np.asarray(zeta, dtype=complex)
    if len(zeta) != tag.n:
        raise ValueError("coordinate count must equal the rank")
    freq = classical_frequencies(tag.family, tag.n)[:, None]
    if tag.family == "A":
        m = np.exp(-1j * freq * zeta[None, :])
    elif tag.family in ("B", "C"):
        m = np.sin(freq * zeta[None, :])
    else:
        m = np.cos(freq * zeta[None, :])
    return complex(np.linalg.det(m))


def weyl_trig_product(tag: RootSystemTag, zeta) -> complex:
    """Product side of the trigonometric denominator identity."""
    tag.require_classical()
    zeta = np.asarray(zeta, dtype=complex)
    n = tag.n
    if len(zeta) != n:
        raise ValueError("coordinate count must equal the rank")
    pair = 1.0 + 0.0j
    for j, k in _pairs(zeta):
        pair *= np.sin(zeta[k] - zeta[j])
        if tag.family != "A":
            pair *= np.sin(zeta[k] + zeta[j])
    if tag.family == "A":
        return complex((2.0j) ** (n * (n - 1) // 2) * pair)
    if tag.family == "B":
        return complex(2.0 ** (n * (n - 1)) * np.prod(np.sin(zeta)) * pair)
    if tag.family == "C":
        return complex(2.0 ** (n * (n - 1)) * np.prod(np.sin(2.0 * zeta)) * pair)
    return complex(2.0 ** ((n - 1) ** 2) * pair)


def macdonald(tag: RootSystemTag, z, tau: complex) -> complex:
    """Affine (Macdonald) denominator built from theta-function factors."""
    tau = complex(tau)
    if tau.imag <= 0.0:
        raise ValueError("modular parameter must have positive imaginary part")
    z = np.asarray(z, dtype=complex)
    if len(z) != tag.n:
        raise ValueError("coordinate count must equal the rank")
    fam = tag.family
    out = 1.0 + 0.0j
    for j, k in _pairs(z):
        out *= complex(np.asarray(theta(1, z[k] - z[j], tau)))
        if fam != "A":
            out *= complex(np.asarray(theta(1, z[k] + z[j], tau)))
    if fam == "A":
        return complex(out)
    for zl in z:
        if fam == "B":
            out *= complex(np.asarray(theta(1, zl, tau)))
        elif fam == "Bv":
            out *= complex(np.asarray(theta(1, 2.0 * zl, 2.0 * tau)))
        elif fam == "C":
            out *= complex(np.asarray(theta(1, 2.0 * zl, tau)))
        elif fam == "Cv":
            out *= complex(np.asarray(theta(1, zl, 0.5 * tau)))
        elif fam == "BC":
            out *= complex(np.asarray(theta(1, zl, tau))) * complex(
                np.asarray(theta(0, 2.0 * zl, 2.0 * tau))
            )
    return complex(out)
