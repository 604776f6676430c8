import pytest

from opergraph import Alphabet


@pytest.fixture(scope="session")
def a2():
    return Alphabet.parse("a:2")


@pytest.fixture(scope="session")
def a2b2():
    return Alphabet.parse("a:2,b:2")


@pytest.fixture(scope="session")
def a2c3():
    return Alphabet.parse("a:2,c:3")


@pytest.fixture(scope="session")
def eac():
    return Alphabet.parse("e:1,a:2,c:3")
