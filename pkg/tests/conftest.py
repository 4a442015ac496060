import pytest

from wickstar.sampling import rng_for


@pytest.fixture
def rng():
    return rng_for(1234)
