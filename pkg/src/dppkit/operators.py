"""Discretized-operator layer: symmetrized Nystrom matrices, projection
checks, partial-isometry defects, Fredholm determinants, and the counting
generating function with its probability-mass extraction."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .kernels import Kernel
from .kernels.base import (
    CylinderStrip,
    GammaMeasure,
    NormalMeasure,
    SphereArea,
    TorusRect,
    UniformAngle,
)
from .quadrules import gauss_gamma, gauss_legendre, gauss_unit_normal, midpoint_periodic

__all__ = [
    "DiscretizedOperator",
    "QuadratureRule",
    "build_isometry",
    "check_projection",
    "count_generating_function",
    "count_pmf",
    "default_rule",
    "discretize",
    "disk_rule",
    "fredholm_det",
    "interval_rule",
    "isometry_defect",
    "restrict_rule",
]


@dataclass
class QuadratureRule:
    """Nodes and positive weights; weights absorb the base-measure density,
    so sum(w * f(nodes)) integrates f against the kernel's base measure."""

    nodes: np.ndarray
    weights: np.ndarray
    domain: str = ""

    def __post_init__(self):
        self.nodes = np.asarray(self.nodes)
        self.weights = np.asarray(self.weights, dtype=float)
        if np.any(self.weights <= 0):
            raise ValueError("quadrature weights must be positive")

    def __len__(self):
        return len(self.weights)


@dataclass
class DiscretizedOperator:
    rule: QuadratureRule
    matrix: np.ndarray

    def trace(self) -> float:
        return float(np.real(np.trace(self.matrix)))

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)


def discretize(kernel: Kernel, rule: QuadratureRule) -> DiscretizedOperator:
    """Symmetrized Nystrom matrix sqrt(w_i) K(x_i, x_j) sqrt(w_j)."""
    root = np.sqrt(rule.weights)
    m = kernel.matrix(rule.nodes) * root[:, None] * root[None, :]
    return DiscretizedOperator(rule, m)


def check_projection(op: DiscretizedOperator, tol: float, expected_rank=None) -> dict:
    """Idempotence/Hermiticity/trace report for a discretized operator."""
    m = op.matrix
    herm = float(np.linalg.norm(m - m.conj().T))
    idem = float(np.linalg.norm(m @ m - m))
    tr = op.trace()
    eigs = np.linalg.eigvalsh(0.5 * (m + m.conj().T))
    report = {
        "hermiticity_defect": herm,
        "idempotence_defect": idem,
        "trace": tr,
        "eig_min": float(eigs.min()),
        "eig_max": float(eigs.max()),
        "tol": tol,
        "passed": bool(herm < tol and idem < tol),
    }
    if expected_rank is not None:
        report["expected_rank"] = int(expected_rank)
        report["trace_defect"] = abs(tr - expected_rank)
        report["passed"] = bool(report["passed"] and report["trace_defect"] < tol)
    return report


def build_isometry(psi, rule_domain: QuadratureRule, rule_param: QuadratureRule):
    """Discretize the window family psi(x, gamma) into a rectangular matrix.

    Rows are indexed by the parameter nodes (gamma), columns by the domain
    nodes; entries sqrt(nu_g) conj(psi(x_j, gamma_g)) sqrt(w_j), so that
    W^* W is the symmetrized kernel matrix of the induced projection.
    """
    vals = psi(rule_domain.nodes, rule_param.nodes)  # (n_domain, n_param)
    w = np.sqrt(rule_domain.weights)[:, None]
    nu = np.sqrt(rule_param.weights)[None, :]
    return (np.conj(vals) * w * nu).T


def isometry_defect(w: np.ndarray) -> float:
    """Partial-isometry defect |W W* W - W|_F."""
    return float(np.linalg.norm(w @ w.conj().T @ w - w))


def fredholm_det(op, alpha: complex) -> complex:
    """det(I + alpha M) via the complex eigenvalue product in log form."""
    m = op.matrix if isinstance(op, DiscretizedOperator) else np.asarray(op)
    eigs = np.linalg.eigvals(m)
    logs = np.log1p(alpha * eigs)
    return complex(np.exp(np.sum(logs)))


def count_generating_function(kernel: Kernel, rule: QuadratureRule, z: complex) -> complex:
    """E[z^(number of points in the window covered by the rule)], computed as
    det(I - (1 - z) M) of the windowed Nystrom matrix."""
    op = discretize(kernel, rule)
    return fredholm_det(op, -(1.0 - z))


def count_pmf(matrix_or_op, max_count: int | None = None, safety: int = 4) -> np.ndarray:
    """Probability mass of the point count in a window, from the windowed
    kernel matrix, by evaluating the generating function at roots of unity.

    The count of a determinantal process restricted to a window is a sum of
    independent Bernoulli variables with the matrix eigenvalues as success
    probabilities; roots-of-unity interpolation recovers the mass function
    without differentiation.
    """
    m = matrix_or_op.matrix if isinstance(matrix_or_op, DiscretizedOperator) else np.asarray(matrix_or_op)
    eigs = np.linalg.eigvals(m)
    n = len(eigs)
    size = (n if max_count is None else min(max_count, n)) + 1 + safety
    zs = np.exp(2j * math.pi * np.arange(size) / size)
    gen = np.array(
        [np.exp(np.sum(np.log1p(-(1.0 - z) * eigs))) for z in zs]
    )
    pmf = np.fft.fft(gen).real / size
    pmf = np.clip(pmf, 0.0, None)
    return pmf[: (n if max_count is None else max_count) + 1]


# ---------------------------------------------------------------------------
# default quadrature rules per family
# ---------------------------------------------------------------------------

def default_rule(kernel: Kernel, n: int = 0) -> QuadratureRule:
    """A full-domain rule adapted to the kernel's base measure.

    Node counts default to values for which doubling moves traces by less
    than 1e-9 for ranks up to ~10 (checked in the test suite).
    """
    base = kernel.base
    fam = kernel.spec.family
    if isinstance(base, NormalMeasure):
        m = n or 96
        x, w = gauss_unit_normal(m, base.mean, base.var)
        return QuadratureRule(x, w, "line")
    if isinstance(base, GammaMeasure):
        m = n or 96
        x, w = gauss_gamma(m, base.a, base.b)
        return QuadratureRule(x, w, "halfline")
    if isinstance(base, UniformAngle):
        if base.space == "circle":
            m = n or 512
            x, w = midpoint_periodic(m, base.length)
        else:
            m = n or 128
            x, w = gauss_legendre(m, 0.0, base.length)
            w = w / base.length
        return QuadratureRule(x, w, "angle")
    if isinstance(base, TorusRect):
        m = n or 48
        px, py = base.periods()
        xr, wr = midpoint_periodic(m, px, normalized=False)
        xi, wi = midpoint_periodic(m, py, normalized=False)
        nodes = (xr[:, None] + 1j * xi[None, :]).ravel()
        weights = (wr[:, None] * wi[None, :]).ravel()
        return QuadratureRule(nodes, weights, "torus")
    if isinstance(base, CylinderStrip):
        m = n or 48
        xr, wr = gauss_unit_normal(m, 0.0, 0.25)
        xi, wi = midpoint_periodic(m, base.circumference())
        nodes = (xr[:, None] + 1j * xi[None, :]).ravel()
        weights = (wr[:, None] * wi[None, :]).ravel()
        return QuadratureRule(nodes, weights, "cylinder")
    if isinstance(base, SphereArea) or base.space == "sphere_angles":
        m = n or 40
        ct, wc = gauss_legendre(m, -1.0, 1.0)
        ph, wp = midpoint_periodic(2 * m, 2.0 * math.pi, normalized=False)
        th = np.arccos(ct)
        if base.space == "sphere_angles":
            nodes = np.stack(
                [np.repeat(th, len(ph)), np.tile(ph, len(th))], axis=-1
            )
        elif base.d == 2:
            tt = np.repeat(th, len(ph))
            pp = np.tile(ph, len(th))
            nodes = np.stack(
                [np.sin(tt) * np.cos(pp), np.sin(tt) * np.sin(pp), np.cos(tt)],
                axis=-1,
            )
        else:
            raise ValueError("default sphere rule covers d = 2 only")
        weights = (wc[:, None] * wp[None, :]).ravel()
        return QuadratureRule(nodes, weights, "sphere")
    raise ValueError(f"no default rule for family {fam!r}")


def interval_rule(kernel: Kernel, a: float, b: float, n: int = 128) -> QuadratureRule:
    """Gauss-Legendre rule on [a, b], weighted by the base-measure density."""
    x, w = gauss_legendre(n, a, b)
    return QuadratureRule(x, w * kernel.base.lebesgue_density(x), f"[{a},{b}]")


def disk_rule(radius: float, n_radial: int = 48, n_angular: int = 96) -> QuadratureRule:
    """Polar rule on a centered disk, weighted by the standard complex
    normal density; radial variable is the squared modulus."""
    u, wu = gauss_legendre(n_radial, 0.0, radius * radius)
    th, wt = midpoint_periodic(n_angular, 2.0 * math.pi, normalized=False)
    s = np.sqrt(u)
    nodes = (s[:, None] * np.exp(1j * th[None, :])).ravel()
    weights = ((np.exp(-u) * wu)[:, None] * wt[None, :] / (2.0 * math.pi)).ravel()
    return QuadratureRule(nodes, weights, f"disk r={radius}")


def restrict_rule(rule: QuadratureRule, mask) -> QuadratureRule:
    keep = np.asarray(mask, dtype=bool)
    return QuadratureRule(rule.nodes[keep], rule.weights[keep], rule.domain + "|restricted")
