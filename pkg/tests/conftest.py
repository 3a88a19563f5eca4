import pytest
from hypothesis import HealthCheck, settings

from corpus import cocycle_corpus

settings.register_profile(
    "exact",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("exact")


@pytest.fixture(scope="session")
def corpus():
    """The shared 540-triple corpus (valid, perturbed and random)."""
    return cocycle_corpus()
