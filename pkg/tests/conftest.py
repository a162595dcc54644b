import pytest

from ksjq import kernels
from ksjq.data import flight_fixture


@pytest.fixture(params=sorted(kernels.AVAILABLE))
def backend(request):
    """Run the test once per available kernel backend."""
    with kernels.backend(request.param):
        yield request.param


@pytest.fixture
def flights():
    return flight_fixture()
