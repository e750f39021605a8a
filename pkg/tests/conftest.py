import pytest

from k3fat.oracle import PrimeFieldConfig


@pytest.fixture(scope="session")
def small_cfg():
    """Single-prime config for fast oracle unit tests."""
    return PrimeFieldConfig(seed=1, trials=2, prime2=None)


@pytest.fixture(scope="session")
def cross_cfg():
    """Dual-prime config matching the defaults of the acceptance suite."""
    return PrimeFieldConfig(seed=1, trials=3)
