"""
src/tools/numdiff.py

Small numerical-calculus helpers used by brackets, calibration and checks:
central-difference gradients of holomorphic functions and Laurent
coefficients by the trapezoid rule on a circle.
"""

from typing import Callable

import numpy as np

from src.config import FD_STEP


def central_gradient(fn: Callable[[np.ndarray], complex], x: np.ndarray,
                     step: float = FD_STEP) -> np.ndarray:
    """
    ∂fn/∂x_k by central differences with a real step.

    For holomorphic fn the real-direction difference is the complex
    derivative, so the same stencil serves complex coordinates.
    """
    x = np.asarray(x, dtype=complex)
    grad = np.empty(x.shape, dtype=complex)
    for k in range(x.size):
        shift = np.zeros_like(x)
        shift.flat[k] = step
        grad.flat[k] = (fn(x + shift) - fn(x - shift)) / (2 * step)
    return grad


def central_derivative(fn: Callable[[complex], complex], z: complex,
                       step: float = FD_STEP) -> complex:
    return complex((fn(z + step) - fn(z - step)) / (2 * step))


def laurent_coefficient(fn: Callable[[complex], complex], center: complex, order: int,
                        radius: float, n_points: int = 64) -> complex:
    """
    Coefficient of (z − center)^order in the Laurent expansion of fn.

    Trapezoid rule for (1/2πi)∮ fn(z)(z − center)^{−order−1} dz on a circle
    of the given radius; exponentially accurate when the annulus around the
    circle is free of other singularities.
    """
    angles = 2 * np.pi * np.arange(n_points) / n_points
    w = radius * np.exp(1j * angles)
    values = np.array([fn(center + wk) for wk in w], dtype=complex)
    return complex(np.mean(values * w ** (-order)))
