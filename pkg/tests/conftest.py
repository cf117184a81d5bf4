"""
Shared fixtures
"""
import sys
from pathlib import Path

import numpy as np
import pytest

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from tests import test_data


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def unit_square():
    return test_data.unit_square()


@pytest.fixture
def centered_square():
    return test_data.centered_square()


@pytest.fixture
def triangle():
    return test_data.triangle()


@pytest.fixture
def pentagon():
    return test_data.pentagon()


@pytest.fixture(scope="session")
def disk():
    return test_data.disk()


@pytest.fixture(scope="session")
def ellipse():
    return test_data.ellipse()
