"""Periodic spatial grid, spectral calculus, and norms.

The real line is truncated to the periodic box [-L/2, L/2).  Everything
downstream (profiles, gauges, functionals, time stepping) works on complex
sample arrays attached to a Grid.  Differentiation, translation, and
antidifferentiation are Fourier-multiplier operations; quadrature is the
box sum dx*sum(f), which is the trapezoid rule on a periodic grid and is
spectrally accurate for smooth periodic integrands.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class Grid:
    """Uniform periodic grid on [-L/2, L/2) with FFT wavenumbers."""

    L: float
    N: int

    def __post_init__(self):
        object.__setattr__(self, "dx", self.L / self.N)
        x = -self.L / 2 + self.dx * np.arange(self.N)
        k = 2 * np.pi * np.fft.fftfreq(self.N, d=self.dx)
        x.setflags(write=False)
        k.setflags(write=False)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "k", k)
        # 2/3-rule mask used for dealiased nonlinear products
        kmax = float(np.max(np.abs(k)))
        mask = (np.abs(k) <= (2.0 / 3.0) * kmax).astype(float)
        mask.setflags(write=False)
        object.__setattr__(self, "dealias_mask", mask)

    @property
    def kmax(self) -> float:
        return float(np.max(np.abs(self.k)))


def make_grid(L: float, N: int) -> Grid:
    """Validated Grid constructor: L > 0 and N a power of two >= 16."""
    if not L > 0:
        raise ValueError(f"box length must be positive, got {L}")
    if N < 16 or (N & (N - 1)) != 0:
        raise ValueError(f"N must be a power of two >= 16, got {N}")
    return Grid(float(L), int(N))


def spectral_derivative(grid: Grid, f: np.ndarray, order: int = 1) -> np.ndarray:
    """Fourier-multiplier derivative (ik)^order, order in {1, 2}.

    For odd orders the Nyquist mode is zeroed: its sign is not determined
    by the samples, and keeping it makes derivatives of real fields complex.
    """
    if order not in (1, 2):
        raise ValueError(f"unsupported derivative order {order}")
    fh = np.fft.fft(f)
    if order == 1:
        mult = 1j * grid.k.copy()
        mult[grid.N // 2] = 0.0
    else:
        mult = -grid.k ** 2
    return np.fft.ifft(mult * fh)


def quadrature(grid: Grid, f) -> float:
    """Box integral dx*sum(f) for a real-valued sample array."""
    vals = np.asarray(f)
    if np.iscomplexobj(vals):
        raise TypeError(
            "quadrature integrates real-valued samples; reduce complex fields "
            "first (e.g. |f|**2 or f.real)"
        )
    return float(grid.dx * vals.astype(float).sum())


def lp_norm(grid: Grid, f: np.ndarray, p) -> float:
    """L^p norm for p in {2, 4, 6}, or the H1 seminorm (L2 of d/dx)."""
    if p == "H1-seminorm":
        return lp_norm(grid, spectral_derivative(grid, f, 1), 2)
    if p not in (2, 4, 6):
        raise ValueError(f"unsupported norm exponent {p!r}")
    mod = np.abs(np.asarray(f))
    return float(quadrature(grid, mod ** p) ** (1.0 / p))


def inner_l2(grid: Grid, f: np.ndarray, g: np.ndarray) -> complex:
    """L2 pairing integral f * conj(g) dx."""
    return complex(grid.dx * np.sum(f * np.conj(g)))


def spectral_shift(grid: Grid, f: np.ndarray, y: float) -> np.ndarray:
    """Translate f by y, i.e. return samples of f(x - y), via the shift theorem.

    Exact for band-limited fields; y need not be a grid multiple.
    """
    fh = np.fft.fft(f)
    return np.fft.ifft(fh * np.exp(-1j * grid.k * y))


def spectral_antiderivative(grid: Grid, f: np.ndarray) -> np.ndarray:
    """Cumulative integral F(x_m) = int_{-L/2}^{x_m} f, computed spectrally.

    The mean of f contributes the linear ramp mean*(x + L/2); the remaining
    modes are divided by ik.  F(-L/2) = 0 by construction, and the total
    box integral mean*L equals the periodic trapezoid sum exactly.
    """
    fh = np.fft.fft(f)
    mean = fh[0] / grid.N
    mult = np.zeros(grid.N, dtype=complex)
    nonzero = grid.k != 0
    mult[nonzero] = 1.0 / (1j * grid.k[nonzero])
    periodic = np.fft.ifft(fh * mult)
    ramp = mean * (grid.x + grid.L / 2)
    F = ramp + periodic - periodic[0]
    return F if np.iscomplexobj(f) else F.real


def dealiased_product(grid: Grid, f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Pointwise product with both factors and the result 2/3-truncated."""
    m = grid.dealias_mask
    fl = np.fft.ifft(np.fft.fft(f) * m)
    gl = np.fft.ifft(np.fft.fft(g) * m)
    return np.fft.ifft(np.fft.fft(fl * gl) * m)


def random_smooth_field(grid: Grid, rng: np.random.Generator,
                        modes: int = 24, amplitude: float = 1.0) -> np.ndarray:
    """Seeded random smooth decaying complex field.

    Low-pass random Fourier sum times a Gaussian envelope, so samples decay
    toward the box edges like the whole-line states they stand in for.
    """
    coeffs = (rng.standard_normal(2 * modes + 1)
              + 1j * rng.standard_normal(2 * modes + 1))
    ms = np.arange(-modes, modes + 1)
    coeffs *= np.exp(-((ms / (modes / 3.0)) ** 2))
    field = np.zeros(grid.N, dtype=complex)
    for m, a in zip(ms, coeffs):
        field += a * np.exp(2j * np.pi * m * grid.x / grid.L)
    envelope = np.exp(-((grid.x / (grid.L / 6.0)) ** 2))
    field *= amplitude * envelope
    return field
