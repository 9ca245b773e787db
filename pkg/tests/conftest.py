import mpmath as mp
import pytest


@pytest.fixture(autouse=True, scope="session")
def high_ambient_precision():
    """Reference constants in tests (pi, zeta values) need more than double
    precision to compare against the certified evaluators."""
    old = mp.mp.dps
    mp.mp.dps = 30
    yield
    mp.mp.dps = old
