import numpy as np
import pytest

from leorsma.scenario import Scenario, default_scenario

# Filled by test_acceptance; printed once at the end of the session.
ACCEPTANCE_LINES = []


@pytest.fixture
def scenario():
    return default_scenario()


@pytest.fixture
def rng():
    return np.random.default_rng(20230517)


@pytest.fixture
def half_wave_pair():
    """N = 2 array with spacing exactly half a wavelength."""
    s = default_scenario()
    return Scenario(antenna_count=2, antenna_spacing=s.wavelength / 2)


def random_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
