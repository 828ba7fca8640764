# tests/conftest.py - Fixtures for the canonical small graphs
import pytest

from tests.helpers import family


@pytest.fixture
def p4():
    return family("path", 4)


@pytest.fixture
def c4():
    return family("cycle", 4)


@pytest.fixture
def k4():
    return family("complete", 4)


@pytest.fixture
def star():
    """K_(1,5) with the center at vertex 0."""
    return family("kbip", 1, 5)
