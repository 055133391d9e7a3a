"""Shared pytest wiring: one summary line per acceptance check."""

_ORDER = {"PASS": 0, "SKIP": 1, "FAIL": 2}
_results: list[tuple[str, str, str]] = []


def _criterion(nodeid: str) -> str:
    name = nodeid.split("::")[-1]
    return name.removeprefix("test_").replace("_", "-")


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.failed:
        _results.append((_criterion(report.nodeid), "FAIL", ""))
    elif report.skipped:
        reason = ""
        if isinstance(report.longrepr, tuple):
            reason = report.longrepr[2].removeprefix("Skipped: ")
        _results.append((_criterion(report.nodeid), "SKIP", reason))
    elif report.when == "call" and report.passed:
        _results.append((_criterion(report.nodeid), "PASS", ""))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _results:
        return
    # keep first-seen order; if a test logs twice, keep the worst status
    merged: dict[str, tuple[str, str]] = {}
    for criterion, status, reason in _results:
        held = merged.get(criterion)
        if held is None or _ORDER[status] > _ORDER[held[0]]:
            merged[criterion] = (status, reason)
    terminalreporter.section("acceptance criteria")
    for criterion, (status, reason) in merged.items():
        suffix = f"  ({reason})" if reason else ""
        terminalreporter.write_line(f"ACCEPTANCE {status:<4} {criterion}{suffix}")
