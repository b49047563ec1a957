import math

import pytest

from rollphase.motion import constant_tilt, sample, wobble

_SUMMARY = []


def record(line):
    """Queue a line for the end-of-session summary."""
    _SUMMARY.append(line)


def pytest_terminal_summary(terminalreporter):
    if _SUMMARY:
        terminalreporter.section("acceptance criteria")
        for line in _SUMMARY:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def latitude_path():
    return sample(constant_tilt(math.pi / 3), 2048)


@pytest.fixture(scope="session")
def wobble_path():
    return sample(wobble(math.pi / 3, 0.3, 2), 2048)
