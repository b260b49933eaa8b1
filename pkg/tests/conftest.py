import sys
from pathlib import Path

import pytest

from kgsurprise import load_graph

sys.path.insert(0, str(Path(__file__).parent))

DATA = Path(__file__).resolve().parents[1] / "data"
CANADA_TSV = DATA / "canada.tsv"


@pytest.fixture(scope="session")
def canada_path():
    return CANADA_TSV


@pytest.fixture(scope="session")
def canada():
    return load_graph(CANADA_TSV)


_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or report.outcome != "passed":
        _acceptance.setdefault(name, report.outcome)
        if report.outcome != "passed":
            _acceptance[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in sorted(_acceptance.items()):
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}")
