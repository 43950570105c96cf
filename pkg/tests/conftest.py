import pytest

from qdesigns import _pykernels
from qdesigns.gf import make_field

try:
    from qdesigns import _ckernels
except ImportError:  # pragma: no cover - extension not built
    _ckernels = None

BACKENDS = [pytest.param(_pykernels, id="python")]
if _ckernels is not None:
    BACKENDS.append(pytest.param(_ckernels, id="cython"))


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


@pytest.fixture
def F2():
    return make_field(2)


@pytest.fixture
def F3():
    return make_field(3)


@pytest.fixture
def F5():
    return make_field(5)
