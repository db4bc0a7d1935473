import pytest

from rauzy.checks import Workbenches

ACCEPTANCE_LINES: list = []


@pytest.fixture(scope="session")
def wb():
    return Workbenches()


@pytest.fixture(scope="session")
def ctx6(wb):
    return wb[6]


@pytest.fixture(scope="session")
def ctx4(wb):
    return wb[4]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
