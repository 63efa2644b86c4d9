import pytest
from hypothesis import HealthCheck, settings

from circle_energy.circle_map import catalog, identity_map

settings.register_profile(
    "unit", max_examples=25, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("unit")


@pytest.fixture(scope="session")
def families():
    return catalog()


@pytest.fixture(scope="session")
def identity():
    return identity_map()
