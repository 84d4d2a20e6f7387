import sys
from pathlib import Path

import pytest

# make the shared corpus generators importable from the test modules
sys.path.insert(0, str(Path(__file__).parent))

_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion checked by this test")


def pytest_runtest_logreport(report):
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    number, title = marker
    outcome = "PASS" if report.passed else "FAIL"
    if report.when == "call" or not report.passed:
        previous = _criteria.get(number, (title, "PASS"))[1]
        _criteria[number] = (title, "FAIL" if "FAIL" in (previous, outcome) else "PASS")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        outcome.get_result().criterion = tuple(marker.args)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, outcome = _criteria[number]
        terminalreporter.write_line(f"{outcome} criterion {number:2d}: {title}")
