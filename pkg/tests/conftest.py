import pytest

from siegelops.opgen import build_Q, symbolic_weight
from siegelops.theta import tnull_qexp


@pytest.fixture(scope="session")
def t2_48():
    return tnull_qexp(48)


@pytest.fixture(scope="session")
def spec2_symbolic():
    return build_Q(2, symbolic_weight())


@pytest.fixture(scope="session")
def spec3_symbolic():
    return build_Q(3, symbolic_weight())


@pytest.fixture(scope="session")
def spec4_symbolic():
    return build_Q(4, symbolic_weight())
