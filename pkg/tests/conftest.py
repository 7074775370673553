from __future__ import annotations

import pytest

from tcq8 import twisted as tw
from tcq8.barres import BarComplex
from tcq8.fingroup import quaternion_group


@pytest.fixture(scope="session")
def Q8():
    return quaternion_group()


@pytest.fixture(scope="session")
def bar7(Q8):
    return BarComplex(Q8, 7)


@pytest.fixture(scope="session")
def bar4(Q8):
    return BarComplex(Q8, 4)


@pytest.fixture(scope="session")
def resolution():
    return tw.resolve_boundary_rule()


@pytest.fixture(scope="session")
def twisted5(resolution):
    return tw.build_twisted_complex(5, 7, resolution.accepted)


@pytest.fixture(scope="session")
def main5(twisted5):
    return tw.solve_main(twisted5)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
