import inspect

_ACCEPTANCE = "test_acceptance.py"
_descriptions = {}
_outcomes = {}


def pytest_collection_modifyitems(items):
    for item in items:
        if item.nodeid.split("::")[0].endswith(_ACCEPTANCE):
            doc = inspect.getdoc(item.function) or item.name
            desc = doc.splitlines()[0]
            if hasattr(item, "callspec"):
                desc += f" [{item.callspec.id}]"
            _descriptions[item.nodeid] = desc


def pytest_runtest_logreport(report):
    if report.nodeid not in _descriptions:
        return
    if report.when == "call" or report.failed:
        prev = _outcomes.get(report.nodeid)
        if prev != "FAIL":
            _outcomes[report.nodeid] = "PASS" if report.passed else (
                "SKIP" if report.skipped else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, desc in _descriptions.items():
        if nodeid in _outcomes:
            terminalreporter.write_line(f"{_outcomes[nodeid]:4}  {desc}")
