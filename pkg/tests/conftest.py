import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion at the end of the run."""
    tr = terminalreporter
    outcomes = {}
    for status in ("passed", "failed", "error"):
        for rep in tr.stats.get(status, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance" in nodeid and getattr(rep, "when", "call") == "call":
                outcomes[nodeid] = status
    if outcomes:
        tr.write_sep("-", "acceptance criteria")
        for nodeid in sorted(outcomes):
            label = "PASS" if outcomes[nodeid] == "passed" else "FAIL"
            tr.write_line(f"{label}  {nodeid.split('::')[-1]}")
