import pytest

from su3bethe.field import mpq
from su3bethe.sampling import RationalSampler


@pytest.fixture
def sampler():
    return RationalSampler(seed=12345, c=1)


@pytest.fixture
def c():
    return mpq(1)
