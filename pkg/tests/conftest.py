import math

import numpy as np
import pytest

from fock_splitter.classical import SymmetricSplitter


def random_splitter(rng: np.random.Generator, min_reflectance: float = 0.0, max_reflectance: float = 1.0) -> SymmetricSplitter:
    """A lossless symmetric splitter with random reflectance, phase and quadrature sign."""
    reflectance = rng.uniform(min_reflectance, max_reflectance)
    rho_phase = rng.uniform(-math.pi, math.pi)
    sign = rng.choice([-1.0, 1.0])
    return SymmetricSplitter.from_polar(
        math.sqrt(reflectance),
        rho_phase,
        math.sqrt(1.0 - reflectance),
        rho_phase + sign * math.pi / 2,
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture
def splitters(rng):
    """Factory for a list of random valid splitters."""

    def make(count, **kwargs):
        return [random_splitter(rng, **kwargs) for _ in range(count)]

    return make


@pytest.fixture
def balanced():
    return SymmetricSplitter.balanced()
