import numpy as np
import pytest

from packingforge.fixtures import fixture_complex


@pytest.fixture(scope="session")
def tet():
    return fixture_complex("tetrahedron", 1.0)


@pytest.fixture(scope="session")
def tet_mixed():
    return fixture_complex("tetrahedron", "mixed")


@pytest.fixture(scope="session")
def octa():
    return fixture_complex("octahedron", 1.0)


@pytest.fixture(scope="session")
def torus():
    return fixture_complex("torus", "mixed")


@pytest.fixture(scope="session")
def genus2():
    return fixture_complex("genus2", "mixed")


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)
