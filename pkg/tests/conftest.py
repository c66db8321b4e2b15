import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from atoroidal import ExceptionKind, enumerate_atoroidal, exception, torus_graph  # noqa: E402

TREFOIL = ExceptionKind.TREFOIL_PROJECTION


@pytest.fixture(scope="session")
def store12():
    return enumerate_atoroidal(12)


@pytest.fixture(scope="session")
def exceptions():
    return {k: exception(k) for k in ExceptionKind}


@pytest.fixture(scope="session")
def t3():
    return torus_graph(3)


@pytest.fixture(scope="session")
def corpus(store12):
    """Every enumerated atoroidal graph up to 12 crossings."""
    return store12.graphs()


# one line per acceptance criterion, printed after the run
ACCEPTANCE = {}


def record(number, title, ok, detail=""):
    ACCEPTANCE[number] = (title, ok, detail)
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[number]
        line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}"
        terminalreporter.write_line(line + (f"  ({detail})" if detail else ""))
