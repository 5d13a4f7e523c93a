import pytest

from compactsearch._backend import BACKENDS
from compactsearch.alphabet import PAPER_ALPHABET, UNIFORM12_ALPHABET


@pytest.fixture
def paper():
    return PAPER_ALPHABET


@pytest.fixture
def uniform12():
    return UNIFORM12_ALPHABET


@pytest.fixture(params=sorted(BACKENDS))
def backend(request):
    return request.param
