"""Spatial substrate: grid construction, spectral calculus, quadrature, norms."""
from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from closed_forms import w_gradsq_box, w_mass_box, w_quartic_box, w_sextic_box
from conftest import random_complex_field
from dnlslab.grid import (
    lp_norm,
    make_grid,
    quadrature,
    spectral_derivative,
)
from dnlslab.solitons import ground_state_W


# ---------------------------------------------------------------------------
# make_grid


def test_make_grid_small_box():
    g = make_grid(2.0 * math.pi, 16)
    assert g.dx == pytest.approx(math.pi / 8.0, rel=1e-15)
    # wavenumbers are integer multiples of 2*pi/L = 1, up to magnitude N/2
    assert np.max(np.abs(g.k)) == pytest.approx(8.0, rel=1e-15)
    assert g.x[0] == pytest.approx(-math.pi)
    assert g.x[g.N // 2] == 0.0


def test_make_grid_spacing():
    g = make_grid(200.0, 8192)
    assert g.dx == pytest.approx(200.0 / 8192.0, rel=1e-15)
    assert g.dx * g.N == pytest.approx(g.L, rel=1e-15)


@pytest.mark.parametrize("L,N", [(200.0, 100), (200.0, 0), (-5.0, 64), (0.0, 64), (200.0, 8)])
def test_make_grid_rejects_bad_arguments(L, N):
    with pytest.raises(ValueError):
        make_grid(L, N)


def test_grid_nodes_are_uniform_and_symmetric():
    g = make_grid(50.0, 64)
    assert np.allclose(np.diff(g.x), g.dx, rtol=0, atol=1e-14)
    # conjugate-symmetric wavenumber set: every +k has a matching -k,
    # except the single unpaired Nyquist mode (the most negative entry)
    ks = np.sort(g.k)
    assert np.allclose(ks[1:] + ks[1:][::-1], 0.0, atol=1e-12)
    assert ks[0] == pytest.approx(-math.pi / g.dx, rel=1e-14)


# ---------------------------------------------------------------------------
# spectral_derivative


def test_derivative_of_fourier_eigenfunction():
    g = make_grid(2.0 * math.pi, 64)
    k0 = 3.0
    f = np.exp(1j * k0 * g.x)
    df = spectral_derivative(g, f, 1)
    assert np.max(np.abs(df - 1j * k0 * f)) < 1e-12


def test_derivative_of_constant_is_zero():
    g = make_grid(10.0, 32)
    f = np.full(g.N, 2.5 + 0.5j)
    assert np.max(np.abs(spectral_derivative(g, f, 1))) < 1e-13
    assert np.max(np.abs(spectral_derivative(g, f, 2))) < 1e-13


def test_second_derivative_of_eigenfunction():
    g = make_grid(2.0 * math.pi, 64)
    f = np.exp(1j * 5.0 * g.x)
    d2 = spectral_derivative(g, f, 2)
    assert np.max(np.abs(d2 + 25.0 * f)) < 1e-11


def test_derivative_rejects_unsupported_order():
    g = make_grid(10.0, 32)
    with pytest.raises(ValueError):
        spectral_derivative(g, np.zeros(g.N), 3)


def test_derivative_of_sampled_ground_state_matches_hand_formula():
    # W'(x) = -2^{7/2} x (4x^2+1)^{-3/2}; the periodic seam carries a
    # derivative kink of size ~2|W'(L/2)|, so the pointwise comparison is
    # made away from the boundary (|x| <= L/8), where the measured error
    # at this resolution is 5.6e-9.
    g = make_grid(200.0, 16384)
    W = ground_state_W(g, 1.0)
    dW = spectral_derivative(g, W, 1).real
    exact = -(2.0 ** 3.5) * g.x / (4.0 * g.x ** 2 + 1.0) ** 1.5
    interior = np.abs(g.x) <= g.L / 8.0
    assert np.max(np.abs(dW - exact)[interior]) < 1e-8


# ---------------------------------------------------------------------------
# quadrature


def test_quadrature_of_one():
    g = make_grid(10.0, 32)
    assert quadrature(g, np.ones(g.N)) == pytest.approx(10.0, abs=1e-12)


def test_quadrature_of_w_squared_matches_truncated_closed_form(grid400):
    W = ground_state_W(grid400, 1.0)
    total = quadrature(grid400, np.abs(W) ** 2)
    assert abs(total - w_mass_box(400.0)) < 1e-8


def test_quadrature_of_w_squared_near_whole_line_mass(grid400):
    W = ground_state_W(grid400, 1.0)
    total = quadrature(grid400, np.abs(W) ** 2)
    assert abs(total - 4.0 * math.pi) / (4.0 * math.pi) < 1e-2


def test_quadrature_rejects_complex_samples():
    g = make_grid(10.0, 32)
    with pytest.raises(TypeError):
        quadrature(g, np.full(g.N, 1.0 + 1.0j))


# ---------------------------------------------------------------------------
# lp_norm


def test_w_quartic_norm_against_whole_line_value(grid400):
    W = ground_state_W(grid400, 1.0)
    val = lp_norm(grid400, W, 4) ** 4
    assert abs(val - 16.0 * math.pi) / (16.0 * math.pi) < 1e-4
    assert abs(val - w_quartic_box(400.0)) < 1e-8


def test_w_sextic_norm_against_whole_line_value(grid400):
    W = ground_state_W(grid400, 1.0)
    val = lp_norm(grid400, W, 6) ** 6
    assert abs(val - 96.0 * math.pi) / (96.0 * math.pi) < 1e-6
    assert abs(val - w_sextic_box(400.0)) < 1e-8


def test_w_gradient_norm_against_whole_line_value(grid400):
    W = ground_state_W(grid400, 1.0)
    val = lp_norm(grid400, W, "H1-seminorm") ** 2
    assert abs(val - 2.0 * math.pi) / (2.0 * math.pi) < 1e-4
    assert abs(val - w_gradsq_box(400.0)) < 1e-7


def test_lp_norm_rejects_unsupported_exponent():
    g = make_grid(10.0, 32)
    with pytest.raises(ValueError):
        lp_norm(g, np.ones(g.N), 3)


def test_h1_seminorm_is_l2_of_derivative():
    g = make_grid(50.0, 256)
    f = random_complex_field(g, 3)
    direct = lp_norm(g, spectral_derivative(g, f, 1), 2)
    assert lp_norm(g, f, "H1-seminorm") == pytest.approx(direct, rel=1e-14)


# ---------------------------------------------------------------------------
# invariants


@given(seed=st.integers(min_value=0, max_value=10_000))
def test_parseval_identity(seed):
    g = make_grid(100.0, 512)
    f = random_complex_field(g, seed)
    physical = lp_norm(g, f, 2) ** 2
    spectral = g.L / g.N ** 2 * float(np.sum(np.abs(np.fft.fft(f)) ** 2))
    assert abs(physical - spectral) <= 1e-12 * max(physical, 1e-30)


@given(
    seed=st.integers(min_value=0, max_value=10_000),
    alpha=st.floats(min_value=-3, max_value=3, allow_nan=False),
    beta=st.floats(min_value=-3, max_value=3, allow_nan=False),
)
def test_derivative_linearity(seed, alpha, beta):
    g = make_grid(100.0, 256)
    f = random_complex_field(g, seed)
    h = random_complex_field(g, seed + 1)
    lhs = spectral_derivative(g, alpha * f + beta * h, 1)
    rhs = alpha * spectral_derivative(g, f, 1) + beta * spectral_derivative(g, h, 1)
    scale = max(float(np.max(np.abs(lhs))), 1.0)
    assert np.max(np.abs(lhs - rhs)) < 1e-12 * scale


@pytest.mark.parametrize("build", [
    lambda x: x * np.exp(-x ** 2),
    lambda x: np.sin(x) * np.exp(-x ** 2 / 2.0),
    lambda x: x ** 3 * np.exp(-x ** 2 / 4.0),
])
def test_quadrature_of_odd_function_vanishes(build):
    g = make_grid(100.0, 512)
    assert abs(quadrature(g, build(g.x))) < 1e-12
