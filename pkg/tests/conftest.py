import pytest

from wmub.modring import crt_context

_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(n): acceptance criterion number")


@pytest.fixture(scope="session")
def ctx15():
    return crt_context(3, 5)


@pytest.fixture(scope="session")
def ctx21():
    return crt_context(3, 7)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    key = str(mark.args[0])
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        passed = rep.outcome == "passed" and not hasattr(rep, "wasxfail")
        prev = _ACCEPTANCE.get(key, True)
        _ACCEPTANCE[key] = prev and passed


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")

    def order(k):
        digits = "".join(c for c in k if c.isdigit())
        return (int(digits), k)

    for key in sorted(_ACCEPTANCE, key=order):
        terminalreporter.write_line(f"criterion {key}: {'PASS' if _ACCEPTANCE[key] else 'FAIL'}")
