import pytest

from macroscope.quantities import CODATA2018

# pass/fail lines collected by the acceptance module
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def const():
    return CODATA2018


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
