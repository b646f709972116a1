import numpy as np
import pytest

from geolrc import make_field

_ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_line():
    """Record one PASS/FAIL line; it is echoed now and in the terminal summary."""

    def record(line: str):
        _ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


SMALL_FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4)]


@pytest.fixture(params=SMALL_FIELDS, ids=lambda pm: f"F{pm[0] ** pm[1]}")
def small_field(request):
    return make_field(*request.param)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
