import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qexterior.sampling import Sampler


@pytest.fixture
def sampler():
    return Sampler(20240)


@pytest.fixture
def sampler_factory():
    return Sampler
