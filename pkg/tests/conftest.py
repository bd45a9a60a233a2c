import pytest

from fillspec.families import fixture_zoo
from fillspec.presentations import (
    fan_presentation,
    heisenberg_presentation,
    z2_presentation,
)


@pytest.fixture(scope="session")
def zoo():
    """name -> (diagram, presentation) for the stock fixtures."""
    return {name: (d, p) for name, d, p in fixture_zoo()}


@pytest.fixture(scope="session")
def z2():
    return z2_presentation()


@pytest.fixture(scope="session")
def fan_pres():
    return fan_presentation()


@pytest.fixture(scope="session")
def heis_pres():
    return heisenberg_presentation()


@pytest.fixture(scope="session")
def frozen():
    from fillspec.profiles import frozen_constants

    return frozen_constants()
