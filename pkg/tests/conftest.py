"""
Fixtures for the CLI and acceptance suites.
"""

import logging

import pytest
from click.testing import CliRunner


@pytest.fixture
def runner():
    """CLI test runner fixture"""
    return CliRunner()


@pytest.fixture(autouse=True)
def reset_logging():
    """The CLI installs root handlers on CliRunner's streams; drop them after each test"""
    yield
    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)
    root.setLevel(logging.WARNING)
