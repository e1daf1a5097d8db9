from collections import OrderedDict

import pytest

_CRITERIA: "OrderedDict[str, str]" = OrderedDict()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion reported in the summary")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    label = dict(report.user_properties).get("criterion")
    if label is None:
        return
    status = "PASS" if report.outcome == "passed" else "FAIL"
    if _CRITERIA.get(label) != "FAIL":
        _CRITERIA[label] = status


@pytest.fixture(autouse=True)
def _criterion_label(request, record_property):
    mark = request.node.get_closest_marker("criterion")
    if mark is not None:
        record_property("criterion", mark.args[0])


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label, status in _CRITERIA.items():
        terminalreporter.write_line(f"{status}  {label}")
