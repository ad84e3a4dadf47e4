import pytest

from binsplit.catalog import load_catalog


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
