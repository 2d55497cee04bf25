import numpy as np
import pytest

from xvcenter import basis as vb
from xvcenter import hamiltonian as hx


@pytest.fixture(scope="session")
def small_basis():
    return vb.VibronicBasis.build(8)


@pytest.fixture(scope="session")
def snv_ground():
    return hx.load_params("SnV", "ground")


@pytest.fixture(scope="session")
def snv_excited():
    return hx.load_params("SnV", "excited")


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240131)
