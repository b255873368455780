import numpy as np
import pytest

from walklab import Space, TorusState


@pytest.fixture
def rng():
    return np.random.default_rng(42)


def random_alpha(rng) -> np.ndarray:
    a = rng.normal(size=4) + 1j * rng.normal(size=4)
    return a / np.linalg.norm(a)


def random_position_state(rng, n_side: int) -> TorusState:
    g = rng.normal(size=(n_side, n_side, 4)) + 1j * rng.normal(size=(n_side, n_side, 4))
    g /= np.linalg.norm(g)
    return TorusState(n_side, Space.POSITION, g)
