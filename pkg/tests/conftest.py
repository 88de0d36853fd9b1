import os
import textwrap
from pathlib import Path
from unittest.mock import patch

import pytest

from model import load_program, loads_program


def pytest_addoption(parser):
    parser.addoption(
        "--run-slow",
        action="store_true",
        default=False,
        help="run the large random corpora",
    )


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: mark test as a large random corpus")


def pytest_collection_modifyitems(config, items):
    if not config.getoption("--run-slow"):
        skip_slow = pytest.mark.skip(reason="need --run-slow option to run")
        for item in items:
            if "slow" in item.keywords:
                item.add_marker(skip_slow)


@pytest.fixture
def mock_env():
    """Fixture to ensure environment is clean for each test."""
    with patch.dict(os.environ, {}, clear=True):
        yield


PROGRAMS = Path(__file__).resolve().parent.parent / "src" / "cli" / "programs"


@pytest.fixture
def example41():
    return load_program(PROGRAMS / "example41.prog")


@pytest.fixture
def mpec_toy():
    return load_program(PROGRAMS / "mpec_toy.prog")


@pytest.fixture
def program_from():
    def build(text: str):
        return loads_program(textwrap.dedent(text))

    return build
