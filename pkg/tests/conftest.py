import os
import random
import sys

import pytest

# Make the package importable when running from a source checkout
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.realpath(__file__))))

from superelliptic.cli import RunOptions  # noqa: E402


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full acceptance ranges (seconds to minutes)")


@pytest.fixture
def rng():
    return random.Random(20240101)


@pytest.fixture
def serial():
    """Single-process run options."""
    return RunOptions(threads=1)
