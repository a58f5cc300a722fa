import pytest

from pasim.fixtures import example_one, matching_pennies, single_state


@pytest.fixture
def ex1():
    return example_one()


@pytest.fixture
def pennies():
    return matching_pennies()


@pytest.fixture
def lone():
    return single_state()


def pytest_terminal_summary(terminalreporter):
    import test_acceptance
    if test_acceptance.REPORT:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.REPORT):
            terminalreporter.write_line(line)
