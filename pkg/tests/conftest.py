import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240890)


def rand_pd(rng: np.random.Generator, d: int, floor: float = 0.25):
    from opspace.linalg import complex_gaussian
    a = complex_gaussian(rng, (d, d))
    g = a @ a.conj().T + floor * np.eye(d)
    return (g + g.conj().T) / 2.0
