import numpy as np
import pytest
from hypothesis import settings

from fatpoints import CyclotomicField, PrimeField
from fatpoints.field import default_primes

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def q3():
    return CyclotomicField(3)


@pytest.fixture(scope="session")
def fp3():
    return PrimeField(default_primes(3, 1)[0], 3)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
