import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "fixed",
    derandomize=True,
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "fixed"))


# -- one summary line per acceptance criterion ---------------------------------

_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, label): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not rep.failed:
        return
    number, label = mark.args
    entry = _criteria.setdefault(number, {"label": label, "failed": [], "seconds": 0.0, "ran": 0})
    if rep.when == "call":
        entry["ran"] += 1
        entry["seconds"] += rep.duration
    if rep.failed:
        entry["failed"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        e = _criteria[number]
        status = "FAIL" if e["failed"] else "PASS"
        line = f"criterion {number:2d}: {status}  {e['label']}  ({e['seconds']:.1f}s)"
        if e["failed"]:
            line += "  failing: " + ", ".join(e["failed"])
        terminalreporter.write_line(line)
