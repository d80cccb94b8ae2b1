"""Determinantal point processes built from projection kernels.

Kernel families on lines, circles, spheres, tori, cylinders and complex
spaces, with exact sampling, count-distribution dualities, discretized
operator checks, and numerical verification of the scaling limits that
connect the finite families to their infinite universal limits.
"""

__version__ = "0.1.0"
