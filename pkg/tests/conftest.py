import re

_CRITERIA: dict[int, str] = {}
_NODE = re.compile(r"test_acceptance\.py::test_criterion_(\d+)")


def pytest_runtest_logreport(report):
    m = _NODE.search(report.nodeid)
    if not m:
        return
    k = int(m.group(1))
    if report.when == "call" or report.failed:
        # a failure in any phase sticks
        if _CRITERIA.get(k) != "failed":
            _CRITERIA[k] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_CRITERIA):
        verdict = "PASS" if _CRITERIA[k] == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict} criterion {k}")
