import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE = []


@pytest.fixture
def criterion(request):
    """Record a pass/fail line for an acceptance criterion; printed in the terminal summary."""
    entry = {"name": request.node.name, "label": None}

    def _set(label):
        entry["label"] = label

    _ACCEPTANCE.append(entry)
    yield _set
    entry["passed"] = not getattr(request.node, "_failed", False)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.failed:
        item._failed = True


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for e in _ACCEPTANCE:
        status = "PASS" if e.get("passed") else "FAIL"
        terminalreporter.write_line(f"[{status}] {e['label'] or e['name']}")
