import pytest
from hypothesis import settings

from splitpolygon import catalog
from splitpolygon.nfield import QQ, FieldTower

settings.register_profile("default", deadline=None)
settings.load_profile("default")

# Q[z] with z^2 - z + 1 = 0
QZ = FieldTower([((1,), (-1,))])
# Q[z][b] with b^2 = 3, and Q[z][i] with i^2 = -1
QZ3 = FieldTower([((1,), (-1,)), ((-3, 0), (0, 0))])
QZI = FieldTower([((1,), (-1,)), ((1, 0), (0, 0))])


@pytest.fixture(scope="session")
def base5():
    return catalog.build("base5")


@pytest.fixture(scope="session")
def maclane1():
    return catalog.build("maclane", 1)


@pytest.fixture(scope="session")
def maclane2():
    return catalog.build("maclane", 2)


@pytest.fixture(scope="session")
def entries():
    return catalog.all_entries()
