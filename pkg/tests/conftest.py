import time

import pytest

from cyclemax import search

# seconds spent building each shared screen, for runtime budgets
TIMINGS: dict[str, float] = {}
# one line per acceptance criterion, printed after the run
ACCEPTANCE: dict[int, str] = {}


def _timed(name, fn, *args):
    start = time.perf_counter()
    out = fn(*args)
    TIMINGS[name] = time.perf_counter() - start
    return out


@pytest.fixture(scope="session")
def gamma_records():
    return _timed("regular-gamma", search.regular_gamma_screen)


@pytest.fixture(scope="session")
def degree_records():
    return _timed("regular-degree", search.regular_degree_screen)


@pytest.fixture(scope="session")
def near_regular_records():
    return _timed("near-regular", search.near_regular_screen)


@pytest.fixture(scope="session")
def gtwo_records():
    return _timed("gtwo", search.gtwo_blowup_screen)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[key])
