import re

import pytest

_criteria = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    key = int(m.group(1))
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _criteria[key] = (m.group(2).replace("_", " "), "PASS" if report.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_criteria):
        name, verdict = _criteria[key]
        terminalreporter.write_line(f"criterion {key:2d}: {verdict}  {name}")


@pytest.fixture
def rng():
    import numpy as np

    return np.random.default_rng(20240607)
