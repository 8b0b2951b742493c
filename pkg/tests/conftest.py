import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE_RESULTS: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    crit = getattr(report, "criterion", None)
    for key, value in report.user_properties:
        if key == "criterion":
            crit = value
    if crit is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        ACCEPTANCE_RESULTS[crit[0]] = ("PASS" if report.passed else "FAIL", crit[1])


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        status, title = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"criterion {k:2d} {status}: {title}")
