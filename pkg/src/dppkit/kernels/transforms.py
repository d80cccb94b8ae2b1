"""Kernel/measure transform algebra: shift, dilatation, square-root map,
gauge transformation, and measure change."""

from __future__ import annotations

import math

import numpy as np

from .base import GenericMeasure, Kernel, KernelSpec, LebesgueLine

__all__ = ["lebesgue_form", "transform"]


class _DerivedKernel(Kernel):
    def __init__(self, inner: Kernel, name: str, eval_fn, base, rank=None):
        super().__init__(
            KernelSpec(name, dict(inner.spec.params)), base, rank=rank
        )
        self.point_ndim = inner.point_ndim
        self._eval_fn = eval_fn

    def eval(self, x, y):
        return self._eval_fn(x, y)


def _space_dim(kernel: Kernel) -> int:
    """Real dimension of the base space (for Lebesgue dilatation factors)."""
    space = kernel.space
    if space in ("complex", "torus", "cylinder"):
        return 2
    if space == "complex_d":
        return 2 * kernel.spec.get("d", 1)
    if space == "real_d":
        return kernel.spec.get("d", 1)
    return 1


def transform(kernel: Kernel, op: str, arg=None) -> Kernel:
    """Apply one of the law-preserving operations to a kernel/measure pair.

    op is one of 'shift', 'dilate', 'sqrt_map', 'gauge', 'measure_change'.
    'gauge' takes a nonvanishing callable u(x); 'measure_change' takes the
    density factor g(x) >= 0 relating the old base measure to the new one.
    """
    base = kernel.base
    name = f"{kernel.spec.family}|{op}"
    if op == "shift":
        u = arg

        def ev(x, y):
            return kernel.eval(np.asarray(x) + u, np.asarray(y) + u)

        newbase = GenericMeasure(
            density_fn=lambda x: base.lebesgue_density(np.asarray(x) + u),
            mass=base.total_mass(),
            space=base.space,
        )
        return _DerivedKernel(kernel, name, ev, newbase, kernel.rank)

    if op == "dilate":
        c = float(arg)
        if c <= 0:
            raise ValueError("dilatation factor must be positive")
        d = _space_dim(kernel)
        lebesgue = isinstance(base, (LebesgueLine,)) or (
            isinstance(base, GenericMeasure) and base.mass == math.inf
        )
        if lebesgue:
            # with a dilatation-invariant reference, fold the Jacobian into
            # the kernel so the base measure is unchanged
            def ev(x, y):
                return kernel.eval(np.asarray(x) / c, np.asarray(y) / c) / c**d

            return _DerivedKernel(kernel, name, ev, base, kernel.rank)

        def ev(x, y):
            return kernel.eval(np.asarray(x) / c, np.asarray(y) / c)

        newbase = GenericMeasure(
            density_fn=lambda x: base.lebesgue_density(np.asarray(x) / c) / c**d,
            mass=base.total_mass(),
            space=base.space,
        )
        return _DerivedKernel(kernel, name, ev, newbase, kernel.rank)

    if op == "sqrt_map":
        if kernel.point_ndim != 0 or getattr(base, "lo", None) not in (0, 0.0):
            raise ValueError("square-root map needs a kernel supported on [0, inf)")

        def ev(x, y):
            x = np.asarray(x, dtype=float)
            y = np.asarray(y, dtype=float)
            return kernel.eval(x * x, y * y)

        newbase = GenericMeasure(
            density_fn=lambda x: base.lebesgue_density(np.asarray(x) ** 2)
            * 2.0
            * np.asarray(x),
            mass=base.total_mass(),
            space=base.space,
        )
        return _DerivedKernel(kernel, name, ev, newbase, kernel.rank)

    if op == "gauge":
        u = arg

        def ev(x, y):
            return kernel.eval(x, y) * u(np.asarray(x)) / u(np.asarray(y))

        return _DerivedKernel(kernel, name, ev, base, kernel.rank)

    if op == "measure_change":
        g = arg

        def ev(x, y):
            return (
                kernel.eval(x, y)
                * np.sqrt(g(np.asarray(x)))
                * np.sqrt(g(np.asarray(y)))
            )

        newbase = GenericMeasure(
            density_fn=lambda x: base.lebesgue_density(x) / g(np.asarray(x)),
            mass=math.nan,
            space=base.space,
        )
        return _DerivedKernel(kernel, name, ev, newbase, kernel.rank)

    raise ValueError(f"unknown transform {op!r}")


def lebesgue_form(kernel: Kernel):
    """Kernel for the same process referred to Lebesgue (or area) measure."""
    base = kernel.base

    def ev(x, y):
        dx = base.lebesgue_density(x)
        dy = base.lebesgue_density(y)
        return kernel.eval(x, y) * np.sqrt(dx) * np.sqrt(dy)

    return ev
