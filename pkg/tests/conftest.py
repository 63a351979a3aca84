import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args[:2]
    soft = marker.kwargs.get("soft", False)
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        details = [v for k, v in item.user_properties if k == "detail"]
        status = "PASS" if report.passed else "FAIL"
        if soft:
            status = "REPORTED"
        _ACCEPTANCE[number] = (title, status, "; ".join(details))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, status, detail = _ACCEPTANCE[number]
        line = f"criterion {number:>2} {status:<8} {title}"
        if detail:
            line += f" | {detail}"
        terminalreporter.write_line(line)
