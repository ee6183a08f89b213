import pytest

from semichain.witness import stock

from acceptance_log import LINES


def pytest_terminal_summary(terminalreporter):
    if not LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in LINES:
        terminalreporter.write_line(line)


@pytest.fixture
def left_zero():
    return lambda n: stock("left_zero", n)


@pytest.fixture
def zero():
    return lambda n: stock("zero", n)


@pytest.fixture
def cyclic():
    return lambda n: stock("cyclic_group", n)
