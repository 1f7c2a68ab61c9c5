import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


def pytest_addoption(parser):
    parser.addoption(
        "--extended", action="store_true", default=False,
        help="run the long published-count reproductions",
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--extended"):
        return
    skip = pytest.mark.skip(reason="extended job; pass --extended to run")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


_acceptance: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "setup" and report.skipped:
        _acceptance[number] = (title, "SKIPPED (extended job, run with --extended)")
    elif report.when == "call":
        previous = _acceptance.get(number, (title, "PASS"))[1]
        status = "PASS" if report.passed and previous != "FAIL" else "FAIL"
        _acceptance[number] = (title, status)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        title, status = _acceptance[number]
        terminalreporter.write_line(f"criterion {number} ({title}): {status}")
