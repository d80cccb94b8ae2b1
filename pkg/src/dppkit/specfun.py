"""Scalar special functions used by the kernel families.

Orthogonal polynomials (Hermite, Laguerre, Jacobi, ultraspherical,
Gegenbauer), Bessel functions of the first kind, the Airy function, and the
four Jacobi theta functions.  Polynomials are evaluated by three-term
recurrence; the explicit finite sums are kept alongside as slow reference
implementations for the self-test suite.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ThetaArgs",
    "airy",
    "bessel_j",
    "bessel_j_prime",
    "gegenbauer",
    "gegenbauer_series",
    "hermite",
    "hermite_series",
    "hyp2f1_poly",
    "jacobi_poly",
    "jacobi_series",
    "laguerre",
    "laguerre_series",
    "spherical_bessel_j",
    "theta",
    "ultraspherical",
]

_AIRY_0 = 3.0 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0)  # Ai(0)
_AIRY_PRIME_0 = -(3.0 ** (-1.0 / 3.0)) / math.gamma(1.0 / 3.0)  # Ai'(0)


def _as_result(values):
    """Return a python scalar for 0-d arrays, the array otherwise."""
    arr = np.asarray(values)
    return arr[()] if arr.ndim == 0 else arr


# ---------------------------------------------------------------------------
# classical orthogonal polynomials
# ---------------------------------------------------------------------------

def hermite(n: int, x):
    """Physicists' Hermite polynomial H_n(x), by three-term recurrence."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    x = np.asarray(x, dtype=float)
    h_prev = np.ones_like(x)
    if n == 0:
        return _as_result(h_prev)
    h = 2.0 * x
    for k in range(1, n):
        h, h_prev = 2.0 * x * h - 2.0 * k * h_prev, h
    return _as_result(h)


def hermite_series(n: int, x: float) -> float:
    """H_n(x) from the explicit finite sum (reference path)."""
    total = 0.0
    for k in range(n // 2 + 1):
        total += (
            (-1.0) ** k
            * (2.0 * x) ** (n - 2 * k)
            / (math.factorial(k) * math.factorial(n - 2 * k))
        )
    return math.factorial(n) * total


def laguerre(n: int, nu: float, x):
    """Generalized Laguerre polynomial L^(nu)_n(x), nu > -1.

    ``n = -1`` returns 0 (the convention used by the discrete kernels on
    the nonnegative integers).
    """
    if nu <= -1.0:
        raise ValueError("laguerre parameter must satisfy nu > -1")
    if n == -1:
        return _as_result(np.zeros_like(np.asarray(x, dtype=float)))
    if n < -1:
        raise ValueError("degree must be >= -1")
    x = np.asarray(x, dtype=float)
    l_prev = np.ones_like(x)
    if n == 0:
        return _as_result(l_prev)
    l = 1.0 + nu - x
    for k in range(1, n):
        l, l_prev = ((2.0 * k + 1.0 + nu - x) * l - (k + nu) * l_prev) / (k + 1.0), l
    return _as_result(l)


def laguerre_series(n: int, nu: float, x: float) -> float:
    """L^(nu)_n(x) from the explicit sum (reference path)."""
    if n == -1:
        return 0.0
    total = 0.0
    for k in range(n + 1):
        poch = 1.0  # (nu+k+1)_{n-k}
        for j in range(n - k):
            poch *= nu + k + 1.0 + j
        total += poch * (-x) ** k / (math.factorial(n - k) * math.factorial(k))
    return total


def jacobi_poly(n: int, alpha: float, beta: float, x):
    """Jacobi polynomial P_n^(alpha,beta)(x), by three-term recurrence."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    x = np.asarray(x, dtype=float)
    p_prev = np.ones_like(x)
    if n == 0:
        return _as_result(p_prev)
    p = 0.5 * (alpha - beta) + 0.5 * (alpha + beta + 2.0) * x
    for k in range(2, n + 1):
        c = 2.0 * k + alpha + beta
        a1 = 2.0 * k * (k + alpha + beta) * (c - 2.0)
        a2 = (c - 1.0) * (alpha * alpha - beta * beta)
        a3 = (c - 2.0) * (c - 1.0) * c
        a4 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * c
        p, p_prev = ((a2 + a3 * x) * p - a4 * p_prev) / a1, p
    return _as_result(p)


def hyp2f1_poly(m: int, b: float, c: float, z):
    """Terminating Gauss hypergeometric sum 2F1(-m, b; c; z)."""
    z = np.asarray(z, dtype=float)
    total = np.ones_like(z)
    term = np.ones_like(z)
    for k in range(m):
        term = term * ((-m + k) * (b + k)) / ((c + k) * (k + 1.0)) * z
        total = total + term
    return _as_result(total)


def jacobi_series(n: int, alpha: float, beta: float, x: float) -> float:
    """P_n^(alpha,beta)(x) via the terminating hypergeometric sum."""
    poch = 1.0  # (alpha+1)_n
    for j in range(n):
        poch *= alpha + 1.0 + j
    return (
        poch
        / math.factorial(n)
        * hyp2f1_poly(n, n + alpha + beta + 1.0, alpha + 1.0, 0.5 * (1.0 - x))
    )


def ultraspherical(k: int, lam: float, x):
    """Ultraspherical polynomial P^lam_k(x), normalized so P^lam_k(1) = 1.

    Valid for lam > -1/2, including lam = 0 where it reduces to cos(k*theta)
    with x = cos(theta).
    """
    if lam <= -0.5:
        raise ValueError("ultraspherical parameter must satisfy lam > -1/2")
    pk = jacobi_poly(k, lam - 0.5, lam - 0.5, x)
    norm = 1.0  # P_k^(lam-1/2,lam-1/2)(1) = (lam+1/2)_k / k!
    for j in range(k):
        norm *= (lam + 0.5 + j) / (j + 1.0)
    return _as_result(np.asarray(pk) / norm)


def gegenbauer(k: int, lam: float, x):
    """Gegenbauer polynomial C^lam_k(x) = binom(k+2lam-1, k) P^lam_k(x)."""
    coeff = 1.0  # (2 lam)_k / k!
    for j in range(k):
        coeff *= (2.0 * lam + j) / (j + 1.0)
    return _as_result(coeff * np.asarray(ultraspherical(k, lam, x)))


def gegenbauer_series(k: int, lam: float, x: float) -> float:
    """C^lam_k(x) from the explicit Gegenbauer sum (reference path)."""
    total = 0.0
    for j in range(k // 2 + 1):
        poch = 1.0  # (lam)_{k-j}
        for i in range(k - j):
            poch *= lam + i
        total += (
            (-1.0) ** j
            * poch
            / (math.factorial(j) * math.factorial(k - 2 * j))
            * (2.0 * x) ** (k - 2 * j)
        )
    return total


# ---------------------------------------------------------------------------
# Bessel functions of the first kind
# ---------------------------------------------------------------------------

# switchover pinned by scanning nu in (-1, 5], x in [0, 200] against the
# series/asymptotic overlap: cancellation grows like e^x * eps below, the
# divergent tail is already ~1e-16 above
_BESSEL_SERIES_CUTOFF = 18.0


def _bessel_series(nu: float, x):
    """Power series for J_nu, adequate for 0 <= x <= ~18."""
    x = np.asarray(x, dtype=float)
    positive = x > 0.0
    lead = np.zeros_like(x)
    if np.any(positive):
        lead[positive] = np.exp(
            nu * np.log(x[positive] / 2.0) - math.lgamma(nu + 1.0)
        )
    if nu == 0.0:
        lead[~positive] = 1.0
    elif nu < 0.0:
        lead[~positive] = np.inf
    q = 0.25 * x * x
    term = lead.copy()
    total = term.copy()
    for k in range(1, 120):
        term = -term * q / (k * (k + nu))
        total += term
        if np.all(np.abs(term) <= 1e-17 * (1.0 + np.abs(total))):
            break
    return total


def _bessel_asymptotic(nu: float, x):
    """Large-argument expansion of J_nu via the modulus/phase sums."""
    x = np.asarray(x, dtype=float)
    mu = 4.0 * nu * nu
    p = np.ones_like(x)
    q = np.zeros_like(x)
    a = np.ones_like(x)  # a_j(nu) / x^j
    prev = np.inf
    for j in range(1, 60):
        a = a * (mu - (2.0 * j - 1.0) ** 2) / (j * 8.0 * x)
        size = float(np.max(np.abs(a)))
        if size > prev:
            break  # tail of the asymptotic series started to diverge
        prev = size
        sign = -1.0 if (j // 2) % 2 else 1.0
        if j % 2 == 1:
            q = q + sign * a
        else:
            p = p + sign * a
        if size < 1e-18:
            break
    omega = x - (0.5 * nu + 0.25) * math.pi
    return np.sqrt(2.0 / (math.pi * x)) * (p * np.cos(omega) - q * np.sin(omega))


def _bessel_any(nu: float, x):
    """J_nu for any real nu (no domain checks), series/asymptotic split."""
    x = np.asarray(x, dtype=float)
    if x.ndim == 0:
        if x <= _BESSEL_SERIES_CUTOFF:
            return _bessel_series(nu, x)
        return _bessel_asymptotic(nu, x)
    out = np.empty_like(x)
    small = x <= _BESSEL_SERIES_CUTOFF
    if np.any(small):
        out[small] = _bessel_series(nu, x[small])
    if np.any(~small):
        out[~small] = _bessel_asymptotic(nu, x[~small])
    return out


def bessel_j(nu: float, x):
    """Bessel function of the first kind J_nu(x) for nu > -1, x >= 0."""
    if nu <= -1.0:
        raise ValueError("bessel order must satisfy nu > -1")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0.0):
        raise ValueError("bessel argument must be nonnegative (real branch)")
    return _as_result(_bessel_any(nu, x))


def bessel_j_prime(nu: float, x):
    """Derivative J_nu'(x), by series differentiation (recurrence when large)."""
    if nu <= -1.0:
        raise ValueError("bessel order must satisfy nu > -1")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0.0):
        raise ValueError("bessel argument must be nonnegative (real branch)")
    if np.any(x == 0.0):
        raise ValueError("derivative at x = 0 is not exposed")
    if x.ndim == 0:
        xs = np.asarray([float(x)])
        return _as_result(bessel_j_prime(nu, xs)[0])
    out = np.empty_like(x)
    small = x <= _BESSEL_SERIES_CUTOFF
    if np.any(small):
        xs = x[small]
        # term-by-term derivative of the power series
        lead = np.exp(nu * np.log(xs / 2.0) - math.lgamma(nu + 1.0))
        q = 0.25 * xs * xs
        term = lead.copy()
        total = term * (nu / xs)
        for k in range(1, 120):
            term = -term * q / (k * (k + nu))
            contrib = term * ((2.0 * k + nu) / xs)
            total += contrib
            if np.all(np.abs(contrib) <= 1e-17 * (1.0 + np.abs(total))):
                break
        out[small] = total
    if np.any(~small):
        xl = x[~small]
        out[~small] = 0.5 * (_bessel_any(nu - 1.0, xl) - _bessel_any(nu + 1.0, xl))
    return out


def spherical_bessel_j(m: int, x):
    """Spherical Bessel function j_m(x) by the closed-form recursion.

    j_0 = sin(x)/x, j_1 = sin(x)/x^2 - cos(x)/x, and upward recurrence
    j_m = (2m-1)/x j_{m-1} - j_{m-2}; equivalent to the iterated-derivative
    (Rayleigh) representation.
    """
    if m < 0:
        raise ValueError("order must be nonnegative")
    x = np.asarray(x, dtype=float)
    j_prev = np.sin(x) / x
    if m == 0:
        return _as_result(j_prev)
    j = np.sin(x) / (x * x) - np.cos(x) / x
    for k in range(2, m + 1):
        j, j_prev = (2.0 * k - 1.0) / x * j - j_prev, j
    return _as_result(j)


# ---------------------------------------------------------------------------
# Airy function
# ---------------------------------------------------------------------------

_AIRY_SERIES_CUTOFF = 6.0


def _airy_maclaurin(x):
    """(Ai, Ai') from the two Maclaurin series, |x| <= ~6."""
    x = np.asarray(x, dtype=float)
    x3 = x**3
    f = np.ones_like(x)
    fp = np.zeros_like(x)
    term_f = np.ones_like(x)
    g = np.array(x, copy=True)
    gp = np.ones_like(x)
    term_g = np.array(x, copy=True)
    for k in range(1, 80):
        term_f = term_f * x3 / (3.0 * k * (3.0 * k - 1.0))
        f += term_f
        fp += term_f * (3.0 * k) / np.where(x != 0.0, x, 1.0) * (x != 0.0)
        term_g = term_g * x3 / (3.0 * k * (3.0 * k + 1.0))
        g += term_g
        gp += term_g * (3.0 * k + 1.0) / np.where(x != 0.0, x, 1.0) * (x != 0.0)
        if np.all(np.abs(term_f) <= 1e-18 * (1.0 + np.abs(f))) and np.all(
            np.abs(term_g) <= 1e-18 * (1.0 + np.abs(g))
        ):
            break
    ai = _AIRY_0 * f + _AIRY_PRIME_0 * g
    aip = _AIRY_0 * fp + _AIRY_PRIME_0 * gp
    return ai, aip


_AIRY_QUAD_NODES = None


def _airy_quad_rule():
    global _AIRY_QUAD_NODES
    if _AIRY_QUAD_NODES is None:
        t, w = np.polynomial.legendre.leggauss(200)
        # integrand support: exp(-sqrt(x) t^2) with x >= 6 is < 1e-18 past t ~ 4.2
        a, b = 0.0, 4.4
        _AIRY_QUAD_NODES = (0.5 * (b - a) * t + 0.5 * (b + a), 0.5 * (b - a) * w)
    return _AIRY_QUAD_NODES


def _airy_positive(x):
    """(Ai, Ai') for x >= ~6 via the saddle-weighted integral representation."""
    x = np.asarray(x, dtype=float)
    t, w = _airy_quad_rule()
    sx = np.sqrt(x)
    zeta = (2.0 / 3.0) * x * sx
    e = np.exp(-np.outer(sx, t * t)) * np.cos(t**3 / 3.0)
    f = e @ w
    fprime = -(e * (t * t)) @ w / (2.0 * sx)
    ai = np.exp(-zeta) * f / math.pi
    aip = np.exp(-zeta) * (fprime - sx * f) / math.pi
    return ai, aip


def _airy_negative(x):
    """(Ai, Ai') for x <= ~-6 via the first-kind Bessel connection."""
    z = -np.asarray(x, dtype=float)
    zeta = (2.0 / 3.0) * z * np.sqrt(z)
    ai = np.sqrt(z) / 3.0 * (_bessel_any(1.0 / 3.0, zeta) + _bessel_any(-1.0 / 3.0, zeta))
    aip = z / 3.0 * (_bessel_any(2.0 / 3.0, zeta) - _bessel_any(-2.0 / 3.0, zeta))
    return ai, aip


def airy(x):
    """Return (Ai(x), Ai'(x)).

    Maclaurin series on |x| <= 6; outside, the exponentially weighted
    integral representation (x > 6) or the Bessel-J connection (x < -6),
    which avoids the cancellation of the oscillatory integral.
    """
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    xs = np.atleast_1d(x)
    ai = np.empty_like(xs)
    aip = np.empty_like(xs)
    mid = np.abs(xs) <= _AIRY_SERIES_CUTOFF
    pos = xs > _AIRY_SERIES_CUTOFF
    neg = xs < -_AIRY_SERIES_CUTOFF
    if np.any(mid):
        ai[mid], aip[mid] = _airy_maclaurin(xs[mid])
    if np.any(pos):
        ai[pos], aip[pos] = _airy_positive(xs[pos])
    if np.any(neg):
        ai[neg], aip[neg] = _airy_negative(xs[neg])
    if scalar:
        return float(ai[0]), float(aip[0])
    return ai, aip


# ---------------------------------------------------------------------------
# Jacobi theta functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ThetaArgs:
    """Arguments of a Jacobi theta function value theta_mu(v; tau)."""

    mu: int
    v: complex
    tau: complex

    def __post_init__(self):
        if self.mu not in (0, 1, 2, 3):
            raise ValueError("theta index must be one of 0, 1, 2, 3")
        if complex(self.tau).imag <= 0.0:
            raise ValueError("modular parameter must have positive imaginary part")


_IMAG_TRANSFORM_CUTOFF = 0.5


def _theta_direct(mu: int, v, tau: complex):
    """Sum the defining series; v may be a complex array.

    The nome power and the trigonometric factor are folded into single
    exponentials so that intermediates never overflow while the assembled
    term is representable.
    """
    v = np.asarray(v, dtype=complex)
    iptau = 1j * math.pi * tau
    ipv = 1j * math.pi * v
    total = np.zeros_like(v) if mu in (1, 2) else np.ones_like(v)
    below = 0
    for n in range(1, 400):
        if mu in (0, 3):
            base = iptau * n * n
            term = np.exp(base + 2.0 * n * ipv) + np.exp(base - 2.0 * n * ipv)
            if mu == 0 and n % 2 == 1:
                term = -term
        else:
            half = n - 0.5
            base = iptau * half * half
            plus = np.exp(base + (2 * n - 1) * ipv)
            minus = np.exp(base - (2 * n - 1) * ipv)
            if mu == 2:
                term = plus + minus
            else:
                term = -1j * (plus - minus)
                if n % 2 == 0:
                    term = -term
        total = total + term
        if np.all(np.abs(term) < 1e-16 * (1.0 + np.abs(total))):
            below += 1
            if below >= 3:
                break
        else:
            below = 0
    return total


# index swap and phase under v -> v/tau, tau -> -1/tau
_IMAG_SWAP = {0: 2, 1: 1, 2: 0, 3: 3}


def theta(mu, v=None, tau=None):
    """Jacobi theta function theta_mu(v; tau), mu in {0, 1, 2, 3}.

    Accepts either ``theta(ThetaArgs(...))`` or ``theta(mu, v, tau)``; ``v``
    may be a complex array.  For slowly decaying nomes (Im tau < 0.5) the
    evaluation routes through the imaginary transformation whenever that
    increases Im tau.
    """
    if isinstance(mu, ThetaArgs):
        args = mu
        mu, v, tau = args.mu, args.v, args.tau
    if mu not in (0, 1, 2, 3):
        raise ValueError("theta index must be one of 0, 1, 2, 3")
    tau = complex(tau)
    if tau.imag <= 0.0:
        raise ValueError("modular parameter must have positive imaginary part")
    inv = -1.0 / tau
    if tau.imag < _IMAG_TRANSFORM_CUTOFF and inv.imag > tau.imag:
        v_arr = np.asarray(v, dtype=complex)
        phase = {0: 0.25j * math.pi, 1: 0.75j * math.pi, 2: 0.25j * math.pi, 3: 0.25j * math.pi}
        front = (
            cmath.exp(phase[mu])
            / cmath.sqrt(tau)
            * np.exp(-1j * math.pi * v_arr * v_arr / tau)
        )
        vals = front * _theta_direct(_IMAG_SWAP[mu], v_arr / tau, inv)
        return _as_result(vals)
    return _as_result(_theta_direct(mu, v, tau))
