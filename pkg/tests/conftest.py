import numpy as np
import pytest

from daycast.fixtures import dni48, temp48, wind48
from daycast.series import Series


@pytest.fixture
def wind():
    return wind48()


@pytest.fixture
def temp():
    return temp48()


@pytest.fixture
def dni():
    return dni48()


@pytest.fixture
def wind24(wind):
    return Series(wind.values[:24], t0=1, period_hint=24, unit="m/s")


@pytest.fixture
def temp24(temp):
    return Series(temp.values[:24], t0=1, period_hint=24, unit="degC")


@pytest.fixture
def dni24(dni):
    return Series(dni.values[:24], t0=1, period_hint=24, unit="Wh/m^2")


def series_of(values, t0=1):
    return Series(np.asarray(values, dtype=float), t0=t0)
