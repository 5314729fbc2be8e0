import os
import sys

from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, max_examples=200,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_criteria: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid or report.when not in ("setup", "call"):
        return
    name = report.nodeid.split("::")[-1]
    if report.failed:
        _criteria[name] = "FAIL"
    elif report.when == "call":
        _criteria.setdefault(name, "PASS" if report.passed else "SKIP")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria):
        terminalreporter.write_line(f"{_criteria[name]}  {name}")
