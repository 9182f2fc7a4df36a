import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_OUTCOMES: dict[int, list[tuple[str, str]]] = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if call.when == "call" or (call.when == "setup" and call.excinfo is not None):
        if call.excinfo is None:
            outcome = "PASS"
        elif call.excinfo.errisinstance(pytest.skip.Exception):
            outcome = "SKIP"
        elif item.get_closest_marker("xfail"):
            outcome = "FAIL (expected)"
        else:
            outcome = "FAIL"
        _OUTCOMES.setdefault(marker.args[0], []).append((item.name, outcome))


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_OUTCOMES):
        for name, outcome in _OUTCOMES[n]:
            terminalreporter.write_line(f"criterion {n:>2}  {outcome:<16} {name}")
