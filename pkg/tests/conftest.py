import math

import pytest

from accelphase.model import AtomConfig, InitialState


@pytest.fixture
def atom():
    return AtomConfig(1.0, 1e-3)


@pytest.fixture
def quarter():
    return InitialState(math.pi / 4)


ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE_KEY] = []


@pytest.fixture
def record_criterion(request):
    """Record ``(number, title, passed, detail)`` for the acceptance summary."""
    lines = request.config.stash[ACCEPTANCE_KEY]

    def record(number, title, passed, detail):
        line = f"{'PASS' if passed else 'FAIL'} [{number:2d}] {title}: {detail}"
        lines.append((number, line))
        print(line)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = sorted(config.stash.get(ACCEPTANCE_KEY, []))
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in lines:
            terminalreporter.write_line(line)
