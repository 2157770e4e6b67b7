import pytest

from gerstenhaber.cohomology import hodge_split
from gerstenhaber.elements import KodairaElements
from gerstenhaber.lie import build_kodaira


@pytest.fixture(scope="session")
def k1():
    return build_kodaira(1)


@pytest.fixture(scope="session")
def k2():
    return build_kodaira(2)


@pytest.fixture(scope="session")
def k3():
    return build_kodaira(3)


@pytest.fixture(scope="session")
def el2(k2):
    return KodairaElements(k2)


@pytest.fixture(scope="session")
def el3(k3):
    return KodairaElements(k3)


@pytest.fixture(scope="session")
def split2(k2):
    return hodge_split(k2, 4)


@pytest.fixture(scope="session")
def split3(k3):
    return hodge_split(k3, 4)
