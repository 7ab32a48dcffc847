from fractions import Fraction

import pytest
from twolevel import Instance
from twolevel.analysis import gen_appendix_a

F = Fraction

@pytest.fixture
def worked():
    """Groups (4, 3, 2) and (5) competing for one item."""
    return Instance.build("single-item", [[4, 3, 2], [5]])


@pytest.fixture
def appendix():
    return gen_appendix_a(F(1, 10))


_acceptance = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when == "call" and item.get_closest_marker("acceptance"):
        _acceptance.append((item.name, report.outcome, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, result, duration in _acceptance:
        terminalreporter.write_line(f"{'PASS' if result == 'passed' else 'FAIL'}  {name}  ({duration:.2f}s)")
