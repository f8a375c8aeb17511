import os
from collections import OrderedDict

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(tag, title): acceptance criterion a test belongs to")
    config._criteria = OrderedDict()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call" and not (report.when == "setup" and report.failed):
        return
    tag, title = marker.args
    entry = item.config._criteria.setdefault(tag, {"title": title, "parts": []})
    entry["parts"].append((item.name, report.passed))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    criteria = getattr(config, "_criteria", None)
    if not criteria:
        return
    terminalreporter.section("acceptance criteria")
    for tag, entry in sorted(criteria.items()):
        failed = [name for name, ok in entry["parts"] if not ok]
        status = "PASS" if not failed else "FAIL"
        line = f"{tag} {status}: {entry['title']} ({len(entry['parts'])} checks"
        line += f"; failing: {', '.join(failed)})" if failed else ")"
        terminalreporter.write_line(line)
