from __future__ import annotations

import pytest

from tlmetric import QParam

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(params=[2.5, 6.0, 50.0], ids=lambda r: f"r={r}")
def r_small(request):
    return request.param


@pytest.fixture
def p5():
    return QParam(6.0, 5)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
