import re

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")
_results: dict = {}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m or (report.when != "call" and not report.failed):
        return
    detail = dict(report.user_properties).get("detail", "")
    _results[int(m.group(1))] = (m.group(2).replace("_", " "), "FAIL" if report.failed else "PASS", detail)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_results):
        name, status, detail = _results[k]
        terminalreporter.write_line(f"criterion {k:2d} {status}  {name}" + (f"  [{detail}]" if detail else ""))
