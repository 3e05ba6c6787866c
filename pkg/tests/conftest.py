"""Configure pytest for the coherence-power test suite."""

import math

import numpy as np
import pytest

from coherence_power.core.coherence import Observable
from coherence_power.core.oracle import SearchConfig
from coherence_power.core.states import DensityMatrix, density_from_bloch

SEED = 20240601

# Coarser grids than the defaults; refinement keeps the same precision
FAST_SEARCH = SearchConfig(circle_points=120, torus_points=12)


def assert_allclose(actual, expected, atol: float = 1e-10) -> None:
    """Assert that two arrays agree entrywise within ``atol``."""
    np.testing.assert_allclose(actual, expected, rtol=0.0, atol=atol)


def bloch_state(x: float, y: float, z: float) -> DensityMatrix:
    """Return the qubit state with the given Bloch vector."""
    return density_from_bloch((x, y, z))


def unit(theta: float, phi: float) -> np.ndarray:
    """Return the unit vector with polar angle theta and azimuth phi."""
    return np.array(
        [
            math.sin(theta) * math.cos(phi),
            math.sin(theta) * math.sin(phi),
            math.cos(theta),
        ]
    )


@pytest.fixture
def rng() -> np.random.Generator:
    """Return a seeded generator so random cases are reproducible."""
    return np.random.default_rng(SEED)


@pytest.fixture
def search() -> SearchConfig:
    """Return the reduced search configuration used by numeric tests."""
    return FAST_SEARCH


@pytest.fixture
def obs_z() -> Observable:
    """Return sigma_z."""
    return Observable.named("z")


@pytest.fixture
def obs_x() -> Observable:
    """Return sigma_x."""
    return Observable.named("x")


@pytest.fixture
def obs_zz() -> Observable:
    """Return sigma_z x sigma_z with the product eigenbasis."""
    return Observable.named("zz")
