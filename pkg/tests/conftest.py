import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from orderability.words import Word

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", parent=settings.get_profile("default"), max_examples=300)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def words(generators, max_len=8, min_len=0):
    """Strategy for (possibly unreduced) words as letter lists, reduced on build."""
    letter = st.tuples(st.sampled_from(list(generators)), st.sampled_from([1, -1]))
    return st.lists(letter, min_size=min_len, max_size=max_len).map(Word)


# -- acceptance summary ---------------------------------------------------------

_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    crit = getattr(report, "_criterion", None)
    if crit is None:
        return
    n, title = crit
    _criteria[n] = (title, "PASS" if report.passed else "FAIL")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        report._criterion = tuple(marker.args)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        title, status = _criteria[n]
        terminalreporter.write_line(f"criterion {n}: {status}  {title}")
