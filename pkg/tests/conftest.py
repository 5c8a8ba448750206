import os

import pytest
from hypothesis import settings

# fixed examples by default; HYPOTHESIS_PROFILE=random explores new ones
settings.register_profile("repeatable", derandomize=True, print_blob=True)
settings.register_profile("random", print_blob=True)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repeatable"))

_outcomes = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    report = outcome.get_result()
    number, title = marker.args
    failed = report.failed
    if report.when == "call" or failed:
        previous = _outcomes.get(number, (title, True))[1]
        _outcomes[number] = (title, previous and not failed)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_outcomes):
        title, passed = _outcomes[number]
        terminalreporter.write_line(f"criterion {number:2d} {'PASS' if passed else 'FAIL'}  {title}")
