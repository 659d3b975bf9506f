import pytest

from gridresolve.grid import Grid


@pytest.fixture
def g3():
    return Grid(3, 3)


@pytest.fixture
def g5():
    return Grid(5, 5)
