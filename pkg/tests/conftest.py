"""
Pytest configuration for the fuzzyspectrum test suite.

Shared fixtures for engines and small simulation configs, plus warning
filters for third-party noise.
"""

import warnings

import pytest
from hypothesis import settings

from fuzzyspectrum.config import SimConfig
from fuzzyspectrum.fuzzy.engine import FlsEngine

# scikit-fuzzy still imports deprecated numpy/scipy helpers (not our code to fix)
warnings.filterwarnings("ignore", category=DeprecationWarning, module="skfuzzy.*")

settings.register_profile("default", deadline=None, max_examples=200)
settings.load_profile("default")


def pytest_configure(config):
    """Configure pytest additional settings."""
    config.addinivalue_line("filterwarnings", "ignore::DeprecationWarning:skfuzzy.*")


@pytest.fixture(scope="session")
def engine() -> FlsEngine:
    """Default partitions with the published rule base."""
    return FlsEngine.preset()


@pytest.fixture
def small_config() -> SimConfig:
    """A short two-rate sweep that runs in well under a second."""
    return SimConfig(
        num_secondary_users=5,
        num_channels=4,
        arrival_rates=(1.0, 3.0),
        sim_duration=20.0,
        replications=2,
        check_invariants=True,
    )
