import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from chutensor.effects import default_effects, natural_effects, reduced_effects  # noqa: E402
from chutensor.verify.fixtures import fixture  # noqa: E402


@pytest.fixture(scope="session")
def lat():
    return fixture


@pytest.fixture(scope="session")
def nat():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = natural_effects(fixture(name))
        return cache[name]

    return get


@pytest.fixture(scope="session")
def space():
    """Default effect space per fixture: reduced when a star is declared."""
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = default_effects(fixture(name))
        return cache[name]

    return get


@pytest.fixture(scope="session")
def red():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = reduced_effects(fixture(name))
        return cache[name]

    return get


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
