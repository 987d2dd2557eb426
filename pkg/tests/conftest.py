import os

os.environ.setdefault("OMP_NUM_THREADS", "1")

import time  # noqa: E402

import numpy as np  # noqa: E402
import pytest  # noqa: E402

from ginibre_rates.sampler import SeedSpec, sample_extreme_eig, sample_radius_kostlan  # noqa: E402
from ginibre_rates.scaling import Ensemble, Statistic  # noqa: E402

EIG_N, EIG_COUNT = 128, 5000


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run tests marked slow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


class Timed:
    """A session-cached sample with the seconds it took to draw."""

    def __init__(self, fn):
        start = time.perf_counter()
        self.value = fn()
        self.seconds = time.perf_counter() - start


@pytest.fixture(scope="session")
def timed_eig_radius_128():
    """5000 spectral radii of complex Ginibre matrices at n = 128 (about a minute on one core)."""
    return Timed(lambda: sample_extreme_eig(
        EIG_N, EIG_COUNT, Ensemble.COMPLEX, Statistic.RADIUS, seed=SeedSpec(2024, 0), workers=_workers()
    ))


@pytest.fixture(scope="session")
def timed_kostlan_radius_128():
    return Timed(lambda: sample_radius_kostlan(EIG_N, EIG_COUNT, SeedSpec(4048, 0), workers=_workers()))


@pytest.fixture
def eig_radius_128(timed_eig_radius_128):
    return timed_eig_radius_128.value


@pytest.fixture
def kostlan_radius_128(timed_kostlan_radius_128):
    return timed_kostlan_radius_128.value


def _workers():
    return max(1, min(8, len(os.sched_getaffinity(0))))
