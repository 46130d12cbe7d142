import pytest

from interval_avoid import Interval, ModelParams


@pytest.fixture(scope="session")
def model():
    return ModelParams()


@pytest.fixture(scope="session")
def interval():
    return Interval(0.0, 1.0)
