import pytest
from hypothesis import HealthCheck, settings

from kummer_cert.catalog import load_catalog
from kummer_cert.curve import new_curve

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

_acceptance: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or report.when != "call" and not report.failed:
        return
    number, title = marker.args
    status = "PASS" if report.passed else "FAIL"
    previous = _acceptance.get(number)
    if previous is None or previous[1] == "PASS":
        _acceptance[number] = (title, status)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        title, status = _acceptance[number]
        terminalreporter.write_line(f"criterion {number} [PRIMARY] {title}: {status}")


@pytest.fixture(scope="session")
def catalog():
    entries, _ = load_catalog(skip_invalid=True)
    return entries


@pytest.fixture(scope="session")
def k7a():
    return new_curve(7, [1, 0, 0, 0, 0, 1], "k7a")
