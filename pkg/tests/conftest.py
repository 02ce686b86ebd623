import pytest

from src.core.models.signing import SearchParams


@pytest.fixture
def k4_params() -> SearchParams:
    """Параметры поиска для K_4 с короткими путями"""
    return SearchParams(d=3, l=4, seed=7)


pytest_plugins = [
    "tests.fixtures.integration.files",
]
