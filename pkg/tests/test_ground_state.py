"""Independent recoveries of the variational profile: shooting and descent."""
from __future__ import annotations

import math

import numpy as np
import pytest

from dnlslab.functionals import action_S, constraint_K, constraint_projection
from dnlslab.grid import lp_norm, make_grid, spectral_derivative
from dnlslab.ground_state import (
    MinimizerOptions,
    MinimizerResult,
    minimize_action,
    shoot_elliptic,
)
from dnlslab.solitons import SolitonParams, ground_state_W, phi_exponential


def _profile_residual(grid, profile, omega, c):
    phi = profile.real
    r = (
        -spectral_derivative(grid, profile, 2).real
        + (omega - c * c / 4.0) * phi
        + 0.5 * c * phi ** 3
        - (3.0 / 16.0) * phi ** 5
    )
    return r


# ---------------------------------------------------------------------------
# shooting


def test_shoot_exponential_case_matches_closed_form():
    g = make_grid(200.0, 8192)
    prof = shoot_elliptic(g, 1.0, 0.0)
    assert prof[g.N // 2].real == pytest.approx(2.0, abs=1e-6)
    exact = phi_exponential(g, SolitonParams(1.0, 0.0))
    assert np.max(np.abs(prof.real - exact.real)) < 1e-6
    assert np.allclose(prof.imag, 0.0)


def test_shoot_borderline_case_recovers_w():
    g = make_grid(200.0, 8192)
    prof = shoot_elliptic(g, 1.0, 2.0)
    assert prof[g.N // 2].real == pytest.approx(2.0 ** 1.5, abs=1e-6)
    W = ground_state_W(g, 1.0)
    assert np.max(np.abs(prof.real - W.real)) < 1e-4


def test_shoot_residual_exponential_case():
    g = make_grid(200.0, 8192)
    prof = shoot_elliptic(g, 1.0, 0.0)
    assert lp_norm(g, _profile_residual(g, prof, 1.0, 0.0), 2) < 1e-6


def test_shoot_residual_borderline_case_in_window():
    # the algebraic tail is cut by the box, so the residual is only small
    # away from the seam kink
    g = make_grid(200.0, 8192)
    prof = shoot_elliptic(g, 1.0, 2.0)
    r = _profile_residual(g, prof, 1.0, 2.0)
    window = np.abs(g.x) <= g.L / 4.0
    assert math.sqrt(g.dx * float(np.sum(r[window] ** 2))) < 1e-6


def test_shoot_intermediate_speed_center_height():
    # the vanishing shooting energy pins phi(0) = sqrt(2c + 4 sqrt(omega))
    g = make_grid(120.0, 4096)
    prof = shoot_elliptic(g, 1.0, 0.7)
    assert prof[g.N // 2].real == pytest.approx(math.sqrt(2 * 0.7 + 4.0), abs=1e-6)


def test_shoot_rejects_bad_parameters(grid_small):
    with pytest.raises(ValueError):
        shoot_elliptic(grid_small, -1.0, 0.0)
    with pytest.raises(ValueError):
        shoot_elliptic(grid_small, 1.0, 2.5)  # c^2 > 4 omega
    with pytest.raises(ValueError):
        shoot_elliptic(grid_small, 1.0, 0.0, bracket=(3.0, 1.0))


def test_shoot_rejects_one_sided_bracket():
    g = make_grid(120.0, 4096)
    with pytest.raises(ValueError):
        shoot_elliptic(g, 1.0, 0.0, bracket=(10.0, 11.0))


# ---------------------------------------------------------------------------
# constrained minimization


@pytest.fixture(scope="session")
def minimizer_grid():
    return make_grid(200.0, 4096)


def _assert_found_w(grid, start, result):
    assert result.converged
    assert result.action == pytest.approx(4.0 * math.pi, abs=1e-3)
    assert abs(result.constraint) < 1e-8
    assert result.distance_to_W_orbit < 1e-3
    assert result.action > 1.0
    # descent from the projected start can only decrease the action
    _, projected = constraint_projection(grid, np.abs(start).astype(complex))
    assert result.action <= action_S(grid, projected) + 1e-12
    # converged means the free Euler-Lagrange residual fell under tolerance
    el = (
        -spectral_derivative(grid, result.profile, 2).real
        + result.profile.real ** 3
        - (3.0 / 16.0) * result.profile.real ** 5
    )
    assert lp_norm(grid, el, 2) < 2e-5


def test_minimize_from_bumped_w(minimizer_grid):
    g = minimizer_grid
    start = ground_state_W(g, 1.0) + 0.1 * np.exp(-(g.x ** 2))
    result = minimize_action(g, start)
    _assert_found_w(g, start, result)


def test_minimize_from_gaussian(minimizer_grid):
    g = minimizer_grid
    start = np.exp(-(g.x ** 2) / 4.0).astype(complex)
    result = minimize_action(g, start)
    _assert_found_w(g, start, result)


def test_minimize_rejects_zero_start(minimizer_grid):
    with pytest.raises(ValueError):
        minimize_action(minimizer_grid, np.zeros(minimizer_grid.N))


def test_minimizer_options_validation():
    with pytest.raises(ValueError):
        MinimizerOptions(max_iterations=0)
    with pytest.raises(ValueError):
        MinimizerOptions(initial_step=0.0)
    with pytest.raises(ValueError):
        MinimizerOptions(residual_tol=-1.0)


def test_minimizer_result_is_on_constraint(minimizer_grid):
    g = minimizer_grid
    start = 1.2 / np.cosh(0.3 * g.x)
    result = minimize_action(g, start.astype(complex))
    assert isinstance(result, MinimizerResult)
    assert abs(constraint_K(g, result.profile)) < 1e-8
    assert result.iterations >= 1
    assert np.all(result.profile.real >= -1e-12)
