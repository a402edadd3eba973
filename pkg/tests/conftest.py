import pytest

from totprog.lvalues import PrecisionContext
from totprog.primes import default_table


@pytest.fixture(scope="session")
def table():
    return default_table()


@pytest.fixture(scope="session")
def ctx():
    return PrecisionContext()
