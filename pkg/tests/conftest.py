import pytest

from twlab.laxdist import fst_grid
from twlab.painleve import solve_hastings_mcleod


@pytest.fixture(scope="session")
def sol():
    return solve_hastings_mcleod()


@pytest.fixture(scope="session")
def sol_wide():
    """Grid [-10, 20]: holds F_st(.; w, -w) for |w| <= 1."""
    return solve_hastings_mcleod(fst_grid(1.0, -1.0))


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import LINES
    if LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(LINES):
            terminalreporter.write_line(LINES[k])
