import pytest

from qpurify import make_noise

# criterion lines collected by test_acceptance, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def half():
    return make_noise(lam=0.5)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
