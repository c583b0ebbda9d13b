"""Closed-form profiles, masses, and solitary waves."""
from __future__ import annotations

import math

import numpy as np
import pytest

from closed_forms import w_mass_box, w_mass_tail
from dnlslab.functionals import constraint_K
from dnlslab.grid import lp_norm, make_grid, quadrature, spectral_derivative
from dnlslab.solitons import (
    SolitonParams,
    commensurate_carrier_scale,
    ground_state_W,
    phi_exponential,
    phi_mass_primitive,
    soliton_mass,
    solitary_wave_R,
    solitary_wave_u,
    w_mass_primitive,
)


def _elliptic_residual(grid, profile, cubic_coeff):
    """L2 residual of -phi'' + cubic_coeff*phi^3 - (3/16) phi^5 = 0."""
    phi = profile.real
    r = (
        -spectral_derivative(grid, profile, 2).real
        + cubic_coeff * phi ** 3
        - (3.0 / 16.0) * phi ** 5
    )
    return lp_norm(grid, r, 2)


# ---------------------------------------------------------------------------
# SolitonParams


@pytest.mark.parametrize("omega,c", [(1.0, 2.0), (1.0, -2.0), (1.0, 3.0), (0.0, 0.0), (-1.0, 0.0)])
def test_soliton_params_rejects_boundary_and_exterior(omega, c):
    with pytest.raises(ValueError):
        SolitonParams(omega, c)


def test_soliton_params_accepts_interior():
    p = SolitonParams(1.0, 1.99)
    assert p.omega == 1.0 and p.c == 1.99


# ---------------------------------------------------------------------------
# ground_state_W


def test_w_center_value(grid400):
    W = ground_state_W(grid400, 1.0)
    assert W[grid400.N // 2].real == pytest.approx(2.0 ** 1.5, rel=1e-14)
    assert np.allclose(W.imag, 0.0)
    assert np.all(W.real > 0)


def test_w_mass_is_tail_corrected_4pi(grid400):
    W = ground_state_W(grid400, 1.0)
    mass = lp_norm(grid400, W, 2) ** 2
    assert 4.0 * math.pi - mass == pytest.approx(w_mass_tail(400.0), abs=1e-8)
    assert abs(mass - 4.0 * math.pi) < 8.0 / 400.0


def test_w_mass_is_scale_invariant(grid400):
    W4 = ground_state_W(grid400, 4.0)
    mass = lp_norm(grid400, W4, 2) ** 2
    # the scaled profile truncates at c*L: tail 8(pi/2 - atan(c*L))
    assert abs(mass - 4.0 * math.pi) < 8.0 / (4.0 * 400.0) + 1e-9


def test_w_rejects_nonpositive_scale(grid_small):
    with pytest.raises(ValueError):
        ground_state_W(grid_small, 0.0)
    with pytest.raises(ValueError):
        ground_state_W(grid_small, -1.0)


# ---------------------------------------------------------------------------
# phi_exponential


def test_phi_closed_form_at_omega1_c0():
    g = make_grid(60.0, 1024)
    phi = phi_exponential(g, SolitonParams(1.0, 0.0))
    assert phi[g.N // 2].real == pytest.approx(2.0, rel=1e-14)
    exact = 2.0 / np.sqrt(np.cosh(2.0 * g.x))
    assert np.max(np.abs(phi.real - exact)) < 1e-12
    assert np.allclose(phi.imag, 0.0)


def test_phi_mass_at_omega1_c0():
    g = make_grid(60.0, 1024)
    phi = phi_exponential(g, SolitonParams(1.0, 0.0))
    assert lp_norm(g, phi, 2) ** 2 == pytest.approx(2.0 * math.pi, abs=1e-10)


def test_phi_mass_monotone_toward_threshold():
    masses = [soliton_mass(SolitonParams(1.0, c)) for c in (1.9, 1.99, 1.999, 2.0 - 1e-7)]
    assert all(b > a for a, b in zip(masses, masses[1:]))
    assert masses[-1] == pytest.approx(4.0 * math.pi, abs=2e-3)
    assert masses[-1] < 4.0 * math.pi


def test_phi_overflow_guard_keeps_tail_finite():
    g = make_grid(200.0, 4096)
    phi = phi_exponential(g, SolitonParams(100.0, 0.0))
    assert np.all(np.isfinite(phi))
    assert np.all(phi.real > 0)


# ---------------------------------------------------------------------------
# soliton_mass


def test_soliton_mass_at_omega1_c0_is_2pi():
    assert soliton_mass(SolitonParams(1.0, 0.0)) == pytest.approx(2.0 * math.pi, rel=1e-14)


def test_soliton_mass_limit_is_4pi():
    m = soliton_mass(SolitonParams(1.0, 2.0 - 1e-12))
    assert m < 4.0 * math.pi
    assert m > 4.0 * math.pi - 1e-5


@pytest.mark.parametrize("omega,c", [(1.0, 0.5), (2.0, 1.0), (1.0, -1.0)])
def test_soliton_mass_matches_quadrature(omega, c):
    g = make_grid(80.0, 2048)
    phi = phi_exponential(g, SolitonParams(omega, c))
    q = lp_norm(g, phi, 2) ** 2
    m = soliton_mass(SolitonParams(omega, c))
    assert abs(q - m) / m < 1e-6


def test_soliton_mass_strictly_increasing_in_c():
    cs = np.linspace(-1.9, 1.9, 39)
    masses = [soliton_mass(SolitonParams(1.0, float(c))) for c in cs]
    assert all(b > a for a, b in zip(masses, masses[1:]))


# ---------------------------------------------------------------------------
# mass primitives


def test_w_mass_primitive_limits_and_derivative():
    assert w_mass_primitive(0.0) == pytest.approx(2.0 * math.pi, rel=1e-14)
    assert w_mass_primitive(1e12) == pytest.approx(4.0 * math.pi, abs=1e-11)
    s = np.linspace(-3.0, 3.0, 7)
    h = 1e-6
    fd = (w_mass_primitive(s + h) - w_mass_primitive(s - h)) / (2.0 * h)
    density = 8.0 / (4.0 * s ** 2 + 1.0)
    assert np.max(np.abs(fd - density)) < 1e-6


def test_phi_mass_primitive_total_matches_closed_form_mass():
    p = SolitonParams(1.0, 0.7)
    total = phi_mass_primitive(p, 1e9) - phi_mass_primitive(p, -1e9)
    assert total == pytest.approx(soliton_mass(p), rel=1e-12)


# ---------------------------------------------------------------------------
# solitary_wave_R


def test_r_modulus_at_t0_is_w(grid200):
    R = solitary_wave_R(grid200, 0.0, 1.0)
    W = ground_state_W(grid200, 1.0)
    assert np.max(np.abs(np.abs(R) - W.real)) < 1e-13


def test_r_modulus_translates_at_speed_minus_two(grid200):
    t = 0.3
    R = solitary_wave_R(grid200, t, 1.0)
    z = grid200.x + 2.0 * t
    expected = 2.0 ** 1.5 / np.sqrt(4.0 * z ** 2 + 1.0)
    assert np.max(np.abs(np.abs(R) - expected)) < 1e-13


def test_r_scaling_identity_exact_across_boxes():
    # R_2(0) sampled on the (L, N) box coincides with sqrt(2) * R(0) sampled
    # on the (2L, N) box node-for-node, so the gradient-square scaling
    # |dx R_lam|^2 = lam^2 |dx R|^2 holds exactly under the change of
    # variables (both sides share the identical seam truncation).
    gA = make_grid(200.0, 4096)
    gB = make_grid(400.0, 4096)
    R2 = solitary_wave_R(gA, 0.0, 2.0)
    R1 = solitary_wave_R(gB, 0.0, 1.0)
    assert np.max(np.abs(R2 - math.sqrt(2.0) * R1)) < 1e-13
    gsq2 = lp_norm(gA, R2, "H1-seminorm") ** 2
    gsq1 = lp_norm(gB, R1, "H1-seminorm") ** 2
    assert abs(gsq2 - 4.0 * gsq1) / (4.0 * gsq1) < 1e-9


def test_r_scaling_identity_same_box_honest_bound():
    # On a fixed box the two scales truncate different amounts of the
    # algebraic tail, so the identity holds only to the tail size
    # (measured 3.3e-5 here), not to 1e-6.
    g = make_grid(200.0, 4096)
    gsq2 = lp_norm(g, solitary_wave_R(g, 0.0, 2.0), "H1-seminorm") ** 2
    gsq1 = lp_norm(g, solitary_wave_R(g, 0.0, 1.0), "H1-seminorm") ** 2
    assert abs(gsq2 - 4.0 * gsq1) / (4.0 * gsq1) < 1e-3


def test_r_mass_matches_box_truncation(grid200):
    R0 = solitary_wave_R(grid200, 0.0, 1.0)
    assert abs(lp_norm(grid200, R0, 2) ** 2 - w_mass_box(200.0)) < 1e-8
    # at t > 0 the modulus is W(x + 2t), so the box truncates asymmetrically
    R = solitary_wave_R(grid200, 0.7, 1.0)
    shifted = 4.0 * (math.atan(2.0 * (100.0 + 1.4)) + math.atan(2.0 * (100.0 - 1.4)))
    assert abs(lp_norm(grid200, R, 2) ** 2 - shifted) < 1e-6


def test_r_rejects_center_beyond_quarter_box(grid200):
    with pytest.raises(ValueError):
        solitary_wave_R(grid200, 30.0, 1.0)  # center -2*lam*t = -60, beyond L/4
    with pytest.raises(ValueError):
        solitary_wave_R(grid200, 15.0, 2.0)  # center -60 again, beyond L/4 = 50


def test_r_rejects_nonpositive_scale(grid200):
    with pytest.raises(ValueError):
        solitary_wave_R(grid200, 0.0, 0.0)


# ---------------------------------------------------------------------------
# solitary_wave_u


def test_u_modulus_at_t0_is_phi():
    g = make_grid(60.0, 1024)
    p = SolitonParams(1.0, 0.5)
    u = solitary_wave_u(g, p, 0.0)
    phi = phi_exponential(g, p)
    assert np.max(np.abs(np.abs(u) - phi.real)) < 1e-13


def test_u_modulus_stationary_for_c0():
    g = make_grid(60.0, 1024)
    p = SolitonParams(1.0, 0.0)
    phi = phi_exponential(g, p)
    for t in (0.4, 1.7):
        u = solitary_wave_u(g, p, t)
        assert np.max(np.abs(np.abs(u) - phi.real)) < 1e-13


def test_u_peak_travels_at_speed_minus_c():
    g = make_grid(60.0, 1024)
    u = solitary_wave_u(g, SolitonParams(1.0, 1.0), 1.0)
    peak = g.x[int(np.argmax(np.abs(u)))]
    assert abs(peak - (-1.0)) <= g.dx


# ---------------------------------------------------------------------------
# elliptic residual invariants


def test_w_elliptic_residual():
    # the algebraic tail puts a derivative kink at the seam, so the literal
    # 1e-6 residual bound needs a wide box; 4.5e-7 measured here
    g = make_grid(12800.0, 262144)
    W = ground_state_W(g, 1.0)
    assert _elliptic_residual(g, W, 1.0) < 1e-6


def test_scaled_w_elliptic_residual():
    # ground_state_W(grid, s) solves -phi'' + s phi^3 - (3/16) phi^5 = 0;
    # the boundary-family member of speed c is the s = c/2 profile
    g = make_grid(12800.0, 262144)
    c = 3.0
    Wc = ground_state_W(g, c / 2.0)
    assert _elliptic_residual(g, Wc, c / 2.0) < 1e-6


@pytest.mark.parametrize("omega,c", [(1.0, 0.0), (1.0, 1.0), (2.0, -1.0)])
def test_phi_elliptic_residual(omega, c):
    g = make_grid(200.0, 8192)
    phi = phi_exponential(g, SolitonParams(omega, c))
    r = (
        -spectral_derivative(g, phi, 2).real
        + (omega - c * c / 4.0) * phi.real
        + (c / 2.0) * phi.real ** 3
        - (3.0 / 16.0) * phi.real ** 5
    )
    assert lp_norm(g, r, 2) < 1e-6


def test_constraint_vanishes_at_w():
    g = make_grid(800.0, 16384)
    assert abs(constraint_K(g, ground_state_W(g, 1.0))) < 1e-6


# ---------------------------------------------------------------------------
# commensurate carrier


def test_commensurate_carrier_scale_solves_periodicity_condition():
    for L in (200.0, 400.0):
        lam = commensurate_carrier_scale(L)
        turns = (lam * L - 6.0 * math.atan(lam * L)) / (2.0 * math.pi)
        assert abs(turns - round(turns)) < 1e-10
        assert abs(lam - 1.0) < 0.05


def test_commensurate_carrier_gives_seam_free_wave():
    g = make_grid(200.0, 4096)
    lam = commensurate_carrier_scale(g.L)

    def top_band_level(scale):
        spec = np.abs(np.fft.fft(solitary_wave_R(g, 0.0, scale)))
        top = np.abs(g.k) > 0.8 * g.kmax
        return float(np.max(spec[top]) / np.max(spec))

    # the commensurate carrier removes the phase jump at the seam; only the
    # algebraic modulus kink remains (measured 2.3e-8 vs 7.5e-6 for a nearby
    # incommensurate scale)
    assert top_band_level(lam) < 1e-7
    assert top_band_level(1.02) > 50.0 * top_band_level(lam)
