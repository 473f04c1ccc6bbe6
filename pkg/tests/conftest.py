import random

import pytest
from hypothesis import strategies as st

from axbc.exact import Matrix

_criteria: dict[int, list[str]] = {}


@pytest.fixture
def rng(request):
    # stable per-test seed
    return random.Random(request.node.nodeid)


@st.composite
def matrices(draw, min_dim=0, max_dim=4, rows=None, cols=None, lo=-3, hi=3):
    m = rows if rows is not None else draw(st.integers(min_dim, max_dim))
    n = cols if cols is not None else draw(st.integers(min_dim, max_dim))
    entries = draw(st.lists(st.integers(lo, hi), min_size=m * n, max_size=m * n))
    return Matrix(m, n, entries)


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    n = getattr(report, "criterion", None)
    if n is not None:
        _criteria.setdefault(n, []).append(report.outcome)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        report.criterion = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        ok = all(o == "passed" for o in _criteria[n])
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}")
