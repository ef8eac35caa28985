import pytest

from lpcert.model import parse_lp

DEGEN2 = """\
vars 2
min 1 -1/2
ge 1 1 >= 3
ge 1 5/2 >= 6
ge 1 -2 >= -3
"""

WORK6 = """\
vars 3
min 1 2 3
ge 0 0 1 >= 1
ge 1 2 1 >= 5
ge 1 -1 2 >= 3
ge 1 1 1 >= 4
ge -1 0 1 >= -2
ge 0 1 -1 >= -1/2
"""


@pytest.fixture
def degen2():
    return parse_lp(DEGEN2)


@pytest.fixture
def work6():
    return parse_lp(WORK6)


# -- acceptance summary -------------------------------------------------------

_criteria: dict[int, tuple[str, list[bool]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion a test belongs to")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            num, title = mark.args
            _criteria.setdefault(num, (title, []))


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    for num, title in getattr(report, "criterion", ()):
        _criteria[num][1].append(report.passed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        outcome.get_result().criterion = [mark.args]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        title, results = _criteria[num]
        if not results:
            verdict = "NOT RUN"
        else:
            verdict = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {num}: {verdict} - {title} ({len(results)} tests)")
