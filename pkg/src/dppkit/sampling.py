"""Exact sampling of finite projection kernels and Monte Carlo estimators.

The sampler is the sequential conditional scheme: the k-th point is drawn
from the diagonal of the kernel with the span of the previous points
projected out, via rejection against the base measure.  All finite families
expose an orthonormal basis, so the conditional densities are exact; the
loop is vectorized across independent samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.stats import chi2 as _chi2

from .kernels import Kernel
from .kernels.base import BaseMeasure
from .operators import QuadratureRule, discretize

__all__ = [
    "PointConfiguration",
    "RngHandle",
    "chi_square_test",
    "estimate_rho",
    "estimate_rho2",
    "sample_base",
    "sample_projection_dpp",
    "sample_projection_dpp_many",
    "sample_radial_counts",
    "window_moments",
]


@dataclass(frozen=True)
class RngHandle:
    """Seed plus stream id; identical pairs reproduce identical draws."""

    seed: int
    stream: int = 0

    def generator(self) -> np.random.Generator:
        return np.random.Generator(
            np.random.PCG64(np.random.SeedSequence((self.seed, self.stream)))
        )


def _as_generator(rng) -> np.random.Generator:
    if isinstance(rng, RngHandle):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    return RngHandle(int(rng)).generator()


@dataclass
class PointConfiguration:
    """A finite configuration with its space tag."""

    points: np.ndarray
    space: str
    weight: Optional[float] = None

    def __len__(self):
        return len(self.points)


def sample_base(measure: BaseMeasure, rng, size: int | None = None):
    """Draw from the normalized base measure."""
    gen = _as_generator(rng)
    out = measure.sample(gen, size if size is not None else 1)
    return out if size is not None else out[0]


def _make_proposal(kernel: Kernel):
    """Proposal sampler and importance ratio d(base)/d(proposal).

    Families whose diagonal is polynomially unbounded against their own
    base measure (Gaussian and Gamma weights, and the Gaussian direction of
    the cylinder) are tilted: the proposal widens the Gaussian variance or
    halves the Gamma rate, which makes diagonal-times-ratio bounded.
    """
    from .kernels.base import CylinderStrip, GammaMeasure, NormalMeasure

    base = kernel.base
    if isinstance(base, NormalMeasure):
        wide = NormalMeasure(base.mean, 2.0 * base.var)

        def ratio(x):
            return base.lebesgue_density(x) / wide.lebesgue_density(x)

        return wide.sample, ratio
    if isinstance(base, GammaMeasure):
        heavy = GammaMeasure(base.a, 0.5 * base.b)

        def ratio(x):
            return base.lebesgue_density(x) / heavy.lebesgue_density(x)

        return heavy.sample, ratio
    if isinstance(base, CylinderStrip):
        circ = base.circumference()

        def draw(gen, size):
            xr = gen.normal(0.0, math.sqrt(0.5), size)
            xi = gen.uniform(0.0, circ, size)
            return xr + 1j * xi

        def ratio(x):
            xr = np.asarray(x).real
            # N(0, 1/4) density over N(0, 1/2) density
            return math.sqrt(2.0) * np.exp(-xr * xr)

        return draw, ratio
    return base.sample, lambda x: np.ones(np.asarray(x).shape[: np.asarray(x).ndim - kernel.point_ndim] or ())


def _diagonal_bound(kernel: Kernel, gen, draw, ratio, scan: int = 8192) -> float:
    """Envelope for rejection: twice the scanned maximum of the tilted
    diagonal K(x, x) d(base)/d(proposal)."""
    pts = draw(gen, scan)
    b = kernel.basis_matrix(pts)
    diag = np.sum(np.abs(b) ** 2, axis=-1) * ratio(pts)
    bound = 2.0 * float(diag.max())
    if not np.isfinite(bound) or bound <= 0:
        raise ValueError(
            f"family {kernel.spec.family!r} has no usable diagonal envelope"
        )
    return bound


def sample_projection_dpp_many(
    kernel: Kernel, n_samples: int, rng, max_rounds: int = 5000
) -> np.ndarray:
    """Draw independent exact samples; returns an array of shape
    (n_samples, rank) (plus a coordinate axis for vector-valued spaces)."""
    if kernel.rank is None:
        raise ValueError("sampling requires a finite-rank kernel")
    gen = _as_generator(rng)
    n = kernel.rank
    m = n_samples
    bound = _diagonal_bound(kernel, gen)

    probe = kernel.base.sample(gen, 1)
    vector = probe.ndim == 2
    out = np.empty((m, n) + (probe.shape[1:] if vector else ()), dtype=probe.dtype)

    basis = np.zeros((m, n, n), dtype=complex)  # orthonormalized rows per sample
    for step in range(n):
        active = np.arange(m)
        rounds = 0
        while active.size:
            prop = kernel.base.sample(gen, active.size)
            phi = kernel.basis_matrix(prop)  # (active, n)
            coef = np.einsum("sjk,sk->sj", np.conj(basis[active, :step, :]), phi)
            resid = np.sum(np.abs(phi) ** 2, axis=-1) - np.sum(
                np.abs(coef) ** 2, axis=-1
            )
            resid = np.clip(resid, 0.0, None)
            accept = gen.uniform(size=active.size) * bound < resid
            if np.any(accept):
                hit = active[accept]
                out[hit, step] = prop[accept]
                v = phi[accept] - np.einsum(
                    "sj,sjk->sk", coef[accept], basis[hit, :step, :]
                )
                norm = np.sqrt(np.sum(np.abs(v) ** 2, axis=-1))
                basis[hit, step, :] = v / norm[:, None]
                active = active[~accept]
            rounds += 1
            if rounds > max_rounds:
                raise RuntimeError(
                    f"rejection sampler stalled for family {kernel.spec.family!r}"
                    f" at point {step + 1}/{n}"
                )
    return out


def sample_projection_dpp(kernel: Kernel, rng) -> PointConfiguration:
    """One exact draw of the full configuration."""
    pts = sample_projection_dpp_many(kernel, 1, rng)[0]
    return PointConfiguration(pts, kernel.space)


def sample_radial_counts(variant, r: float, rng, size: int = 1) -> np.ndarray:
    """Disk counts of the planar exponential family via independent
    Bernoulli modes; ``variant`` is 'A', 'C', 'D' or an explicit probability
    vector for a custom radially symmetric weight."""
    from .duality import _disk_modes

    if r <= 0.0:
        raise ValueError("radius must be positive")
    gen = _as_generator(rng)
    if isinstance(variant, str):
        _, probs = _disk_modes(variant, r)
    else:
        probs = np.asarray(variant, dtype=float)
    draws = gen.random((size, len(probs))) < probs[None, :]
    return draws.sum(axis=1)


# ---------------------------------------------------------------------------
# estimators
# ---------------------------------------------------------------------------

def _jackknife_se(values: np.ndarray) -> float:
    """Jackknife standard error of the mean of a 1-d array."""
    m = len(values)
    total = values.sum()
    loo = (total - values) / (m - 1.0)
    return float(np.sqrt((m - 1.0) / m * np.sum((loo - loo.mean()) ** 2)))


def estimate_rho(samples: np.ndarray, edges: np.ndarray, measure: BaseMeasure):
    """Binned one-point density estimate with jackknife standard errors.

    ``samples`` has shape (n_samples, n_points); densities are reported
    with respect to the base measure, using its exact bin masses.
    """
    samples = np.asarray(samples, dtype=float)
    if samples.size == 0:
        raise ValueError("empty sample set")
    edges = np.asarray(edges, dtype=float)
    m = samples.shape[0]
    nbins = len(edges) - 1
    counts = np.stack(
        [np.histogram(row, bins=edges)[0] for row in samples]
    ).astype(float)
    masses = np.array(
        [measure.interval_mass(edges[i], edges[i + 1]) for i in range(nbins)]
    )
    rho = counts.mean(axis=0) / masses
    se = np.array([_jackknife_se(counts[:, i]) for i in range(nbins)]) / masses
    centers = 0.5 * (edges[:-1] + edges[1:])
    return centers, rho, se


def estimate_rho2(
    samples: np.ndarray,
    window_a: tuple,
    window_b: tuple,
    measure: BaseMeasure,
):
    """Two-window product-moment estimate of the pair density, for disjoint
    windows: E[count(A) count(B)] / (mass(A) mass(B)), with jackknife SE."""
    samples = np.asarray(samples, dtype=float)
    a_lo, a_hi = window_a
    b_lo, b_hi = window_b
    if max(a_lo, b_lo) < min(a_hi, b_hi):
        raise ValueError("pair-density windows must be disjoint")
    na = np.sum((samples >= a_lo) & (samples < a_hi), axis=1)
    nb = np.sum((samples >= b_lo) & (samples < b_hi), axis=1)
    mass = measure.interval_mass(a_lo, a_hi) * measure.interval_mass(b_lo, b_hi)
    prod = (na * nb).astype(float)
    return prod.mean() / mass, _jackknife_se(prod) / mass


def window_moments(kernel: Kernel, rule: QuadratureRule):
    """Exact mean and variance of the point count in the window covered by
    the rule: trace identities of the restricted operator."""
    op = discretize(kernel, rule)
    t1 = float(np.real(np.trace(op.matrix)))
    t2 = float(np.real(np.trace(op.matrix @ op.matrix)))
    return t1, t1 - t2


def chi_square_test(counts: np.ndarray, probs: np.ndarray, min_expected: float = 5.0):
    """Pearson goodness-of-fit with small-expectation bins pooled; returns
    (statistic, dof, p_value)."""
    counts = np.asarray(counts, dtype=float)
    n = counts.sum()
    expected = np.asarray(probs, dtype=float) * n
    # pool trailing/leading bins until all expectations clear the floor
    obs_pool, exp_pool = [], []
    acc_o = acc_e = 0.0
    for o, e in zip(counts, expected):
        acc_o += o
        acc_e += e
        if acc_e >= min_expected:
            obs_pool.append(acc_o)
            exp_pool.append(acc_e)
            acc_o = acc_e = 0.0
    if acc_e > 0:
        if exp_pool:
            obs_pool[-1] += acc_o
            exp_pool[-1] += acc_e
        else:
            obs_pool.append(acc_o)
            exp_pool.append(acc_e)
    obs = np.array(obs_pool)
    exp = np.array(exp_pool)
    stat = float(np.sum((obs - exp) ** 2 / exp))
    dof = max(len(obs) - 1, 1)
    return stat, dof, float(_chi2.sf(stat, dof))
