import pytest

from fqlfunc.fields import field
from fqlfunc.poly import Poly


@pytest.fixture(scope="session")
def f2():
    return field(2)


@pytest.fixture(scope="session")
def f3():
    return field(3)


@pytest.fixture(scope="session")
def f5():
    return field(5)


@pytest.fixture(scope="session")
def t3(f3):
    return Poly.x(f3)


def poly3(*coeffs):
    return Poly(field(3), coeffs)


def poly2(*coeffs):
    return Poly(field(2), coeffs)
