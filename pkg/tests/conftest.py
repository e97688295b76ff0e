import numpy as np
import pytest

from threshsel import Dataset


@pytest.fixture
def rng():
    return np.random.default_rng(98214)


def make_dataset(rng, n, p, beta=None, noise_sd=1.0):
    """Small random regression dataset with optional true coefficients."""
    design = rng.standard_normal((n, p))
    if beta is None:
        beta = rng.standard_normal(p)
    response = design @ np.asarray(beta, dtype=float) + noise_sd * rng.standard_normal(n)
    return Dataset(design, response, tuple(f"x{j}" for j in range(p)))


@pytest.fixture
def dataset_factory():
    return make_dataset
