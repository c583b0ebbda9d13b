"""Gauge maps between the u, v, and w forms of the equation.

v = exp(-(3/4) i int_{-L/2}^x |u|^2) u turns the derivative nonlinearity
into cubic/quintic terms without the outer d/dx; w = exp(-i t + i x)
v(t, x - 2t) recenters the unit solitary wave to the real profile W.  The
lower integration limit -inf becomes the left box edge; the dropped tail is
a constant global phase, which every orbit-distance computation quotients
out anyway.

All primitives are computed spectrally.  A running trapezoid sum would leave
O(dx^2) phase dents in the interior, visibly breaking the gauge/evolution
commutation checks, while the Fourier antiderivative is exact for smooth
periodic mass densities and still reproduces the trapezoid values at the box
edges.
"""

from __future__ import annotations

import numpy as np

from .grid import Grid, spectral_antiderivative, spectral_shift


def cumulative_mass_primitive(grid: Grid, f: np.ndarray) -> np.ndarray:
    """F(x_m) = int_{-L/2}^{x_m} |f|^2, nondecreasing with F(-L/2) = 0."""
    return spectral_antiderivative(grid, np.abs(f) ** 2)


def gauge_u_to_v(grid: Grid, u: np.ndarray) -> np.ndarray:
    """v = exp(-(3/4) i F) u with F the cumulative mass primitive of u."""
    F = cumulative_mass_primitive(grid, u)
    return np.exp(-0.75j * F) * u


def gauge_v_to_u(grid: Grid, v: np.ndarray) -> np.ndarray:
    """Exact inverse of gauge_u_to_v (|u| = |v|, so the primitive is shared)."""
    F = cumulative_mass_primitive(grid, v)
    return np.exp(+0.75j * F) * v


def v_to_w(grid: Grid, v: np.ndarray, t: float) -> np.ndarray:
    """w(t, x) = exp(-i t + i x) v(t, x - 2t), translation done spectrally."""
    if abs(2 * t) > grid.L / 2:
        raise ValueError(f"drift 2t = {2 * t:.3g} exceeds half the box")
    shifted = spectral_shift(grid, v, 2 * t)
    return np.exp(-1j * t + 1j * grid.x) * shifted
