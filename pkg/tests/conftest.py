import pytest

from quadmonad import QuadricSpace


@pytest.fixture
def q4():
    return QuadricSpace(4)


@pytest.fixture
def q5():
    return QuadricSpace(5)
