"""Shared fixtures and the acceptance summary hook."""

import pytest

from decilim import parse_poly

ACCEPTANCE_LINES = []


def record(number, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number:>2}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2][:-1])):
        terminalreporter.write_line(line)


@pytest.fixture
def ledrappier():
    return parse_poly("1+x+y")


@pytest.fixture
def golden():
    return parse_poly("x^2-x-1")
