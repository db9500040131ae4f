import numpy as np
import pytest

from smig import em, forward, imaging


@pytest.fixture(scope="session")
def paper_medium():
    return em.MediumParams.from_relative(20.0, 0.2, 1.0e9)


@pytest.fixture(scope="session")
def paper_array():
    return em.antenna_array(16, 0.09)


@pytest.fixture(scope="session")
def paper_k(paper_medium):
    return em.wavenumber(paper_medium)


@pytest.fixture(scope="session")
def small_anomaly():
    return forward.Anomaly.from_relative((0.01, 0.03), 0.010, 55.0, 1.2)


@pytest.fixture(scope="session")
def extended_anomaly():
    return forward.Anomaly.from_relative((0.01, 0.02), 0.050, 15.0, 0.5)


@pytest.fixture(scope="session")
def born_fixture(paper_array, small_anomaly, paper_medium):
    return forward.born_smatrix(paper_array, [small_anomaly], paper_medium)


@pytest.fixture(scope="session")
def contaminated_fixture(born_fixture):
    return forward.contaminate_diagonal(born_fixture, 5.0, mode="random", seed=20260808)


@pytest.fixture(scope="session")
def default_grid():
    return imaging.ImagingGrid(-0.1, 0.1, -0.1, 0.1, 0.001)


@pytest.fixture(scope="session")
def coarse_grid():
    return imaging.ImagingGrid(-0.1, 0.1, -0.1, 0.1, 0.005)


@pytest.fixture(scope="session")
def r_star():
    return np.array([0.01, 0.03])
