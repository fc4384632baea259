import pytest

from hypernil import catalog
from hypernil.config import get_settings


@pytest.fixture(autouse=True)
def fresh_settings():
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def kodaira():
    return catalog.load("kodaira")


@pytest.fixture
def abelian4():
    return catalog.load("abelian4")


@pytest.fixture
def qh8():
    return catalog.load("quaternionic_heisenberg8")
