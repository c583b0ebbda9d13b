"""Shared fixtures: reusable grids and a deterministic hypothesis profile."""
from __future__ import annotations

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from dnlslab.grid import make_grid

settings.register_profile(
    "suite",
    max_examples=25,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def grid400():
    """Constant-verification grid: wide box, fine spacing."""
    return make_grid(400.0, 16384)


@pytest.fixture(scope="session")
def grid200():
    """Default evolution-scale grid."""
    return make_grid(200.0, 4096)


@pytest.fixture(scope="session")
def grid_small():
    """Cheap grid for property tests over many random fields."""
    return make_grid(100.0, 1024)


def random_complex_field(grid, seed: int, modes: int = 24, amplitude: float = 1.0):
    """Deterministic random smooth field for a given seed."""
    from dnlslab.grid import random_smooth_field

    rng = np.random.default_rng(seed)
    return random_smooth_field(grid, rng, modes=modes, amplitude=amplitude)
