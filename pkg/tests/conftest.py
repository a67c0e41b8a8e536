import pytest

from incmac.verification import run_verification

_ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def battery():
    """The full verification battery, run once per session."""
    return run_verification()


@pytest.fixture(scope="session")
def acceptance_report():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
