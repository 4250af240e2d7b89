"""Shared fixtures and the hypothesis profile."""
import pytest
from hypothesis import HealthCheck, settings

from multicolor.config import get_settings
from multicolor.core import Multigraph, build

settings.register_profile(
    "multicolor",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("multicolor")


def petersen_edges():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return [(u, v, 1) for u, v in outer + spokes + inner]


@pytest.fixture
def triangle() -> Multigraph:
    return build(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])


@pytest.fixture
def k4() -> Multigraph:
    return build(4, [(u, v, 1) for u in range(4) for v in range(u + 1, 4)])


@pytest.fixture
def petersen() -> Multigraph:
    return build(10, petersen_edges())


@pytest.fixture
def star4() -> Multigraph:
    return build(5, [(0, v, 1) for v in range(1, 5)])


@pytest.fixture
def fresh_settings(monkeypatch):
    """Clear the settings cache before and after a test that patches the environment."""

    get_settings.cache_clear()
    yield monkeypatch
    get_settings.cache_clear()
