import re

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None)
settings.load_profile("default")

_CRITERION = re.compile(r"test_criterion_(\d+)_(\w+)")
_outcomes: dict[int, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = _CRITERION.match(item.name)
    if not m:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _outcomes[int(m.group(1))] = (m.group(2).replace("_", " "), "PASS" if rep.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_outcomes):
        name, status = _outcomes[k]
        terminalreporter.write_line(f"criterion {k:2d} {status}  {name}")
