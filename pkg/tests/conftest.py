import pytest
from hypothesis import strategies as st

from bruhat01.matrix import BinaryMatrix

_criteria = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _criteria.append((marker.args[0], marker.args[1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, outcome in sorted(_criteria):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  criterion {number}: {title}")


@st.composite
def binary_matrices(draw, max_m=6, max_n=6, min_m=1, min_n=1):
    m = draw(st.integers(min_m, max_m))
    n = draw(st.integers(min_n, max_n))
    rows = draw(st.lists(st.lists(st.integers(0, 1), min_size=n, max_size=n),
                         min_size=m, max_size=m))
    return BinaryMatrix(tuple(map(tuple, rows)), n)


@st.composite
def same_shape_pairs(draw, max_m=5, max_n=5):
    A = draw(binary_matrices(max_m, max_n))
    rows = draw(st.lists(st.lists(st.integers(0, 1), min_size=A.n, max_size=A.n),
                         min_size=A.m, max_size=A.m))
    return A, BinaryMatrix(tuple(map(tuple, rows)), A.n)
