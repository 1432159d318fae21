import pytest
from hypothesis import settings

settings.register_profile("fixed", derandomize=True)
settings.load_profile("fixed")

_criteria: dict = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when != "call" and not report.failed:
        return
    number, title = mark.args
    entry = _criteria.setdefault(number, {"title": title, "passed": True, "tests": 0})
    if report.when == "call":
        entry["tests"] += 1
    if report.failed:
        entry["passed"] = False


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        status = "PASS" if entry["passed"] else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status}  {entry['title']} ({entry['tests']} checks)")
