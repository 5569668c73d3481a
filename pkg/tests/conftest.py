import pytest

from stonevn.exact import QQ
from stonevn.vnring import ProductRing


@pytest.fixture
def q3():
    return ProductRing.power(3, QQ)


def q(text):
    return QQ.parse(text)
