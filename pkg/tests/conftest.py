"""Pytest fixtures for detlab tests."""

import math

import numpy as np
import pytest

from src.boundary import BoundaryProjection, GrassmannPoint
from src.lab import ExperimentConfig
from src.spectral import ModePair, TangentialSpectrum


@pytest.fixture
def unit_spectrum():
    """μ_k = k + 1: ζ_{B²}(s) = 2ζ(2s), det_ζ B² = (2π)²."""
    return TangentialSpectrum.arithmetic(1.0, 1.0)


@pytest.fixture
def half_spectrum():
    """μ_k = k + 1/2: ζ_{B²}(0) = 0, det_ζ B² = 4."""
    return TangentialSpectrum.arithmetic(0.5, 1.0)


@pytest.fixture
def finite_spectrum():
    """Two modes, the second doubly degenerate."""
    return TangentialSpectrum.explicit([1.0, 2.0], [1, 2])


@pytest.fixture
def mode_pair():
    return ModePair(1.0)


@pytest.fixture
def dirichlet_eigenvalues():
    """−d²/dx² on [0, π] with Dirichlet ends: j², det_ζ = 2π, ζ(0) = −1/2."""
    return np.arange(1, 801, dtype=np.float64) ** 2


@pytest.fixture
def small_config(unit_spectrum):
    """A cheap experiment config: one R, few numeric modes."""
    return ExperimentConfig(
        spectrum=unit_spectrum,
        R_grid=(1.0,),
        mode_cutoff=8,
        theta=(0.5 * math.pi,),
        p1=BoundaryProjection.rotated("aps_pos", [math.pi / 3]),
        p2=BoundaryProjection.aps_pos(),
        point=GrassmannPoint((math.pi / 3,)),
    )
