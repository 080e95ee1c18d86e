import numpy as np
import pytest

from dampedqho.model import PhysParams


@pytest.fixture
def unit():
    return PhysParams(m=1.0, omega=1.0, lambda_damp=1.0, hbar=1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(2024)


def random_hermitian(rng, n):
    x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return 0.5 * (x + x.conj().T)


def random_general(rng, n):
    return rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
