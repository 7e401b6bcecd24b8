import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from qpathdiv.states import RandomSpec, random_density

settings.register_profile(
    "suite",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture
def pair_2x2():
    rho = random_density(RandomSpec(2, 101, 0.05))
    sigma = random_density(RandomSpec(2, 202, 0.05))
    return rho, sigma


@pytest.fixture
def pair_3x3():
    rho = random_density(RandomSpec(3, 303, 0.05))
    sigma = random_density(RandomSpec(3, 404, 0.05))
    return rho, sigma


def random_hermitian(dim: int, seed: int) -> np.ndarray:
    rng = np.random.Generator(np.random.PCG64(seed))
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (g + g.conj().T) / 2
