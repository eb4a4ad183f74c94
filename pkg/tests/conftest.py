"""Shared test plumbing.

The acceptance battery registers one line per criterion; the terminal
summary hook prints them after the normal pytest output so the pass/fail
status of each criterion is visible even when capture is on.
"""

import contextlib

ACCEPTANCE_RESULTS = []


@contextlib.contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        ACCEPTANCE_RESULTS.append((name, "FAIL"))
        raise
    ACCEPTANCE_RESULTS.append((name, "PASS"))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, status in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{status}  {name}")
