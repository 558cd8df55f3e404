import pytest

ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or report.when != "call":
        return
    number, title = marker.args
    detail = dict(item.user_properties).get("measured", "")
    ACCEPTANCE[number] = (title, report.passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, passed, detail = ACCEPTANCE[number]
        line = f"{'PASS' if passed else 'FAIL'}  criterion {number}: {title}"
        terminalreporter.write_line(line + (f"  [{detail}]" if detail else ""))
