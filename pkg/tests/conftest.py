from __future__ import annotations

from collections import OrderedDict

import pytest

_RESULTS: "OrderedDict[str, dict]" = OrderedDict()


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(cid, text): test belongs to acceptance criterion cid")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        cid, text = marker.args
        entry = _RESULTS.setdefault(cid, {"text": text, "passed": [], "failed": []})
        (entry["passed"] if rep.passed else entry["failed"]).append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for cid in sorted(_RESULTS, key=lambda c: int(c)):
        e = _RESULTS[cid]
        status = "PASS" if not e["failed"] else "FAIL"
        n = len(e["passed"]) + len(e["failed"])
        line = f"criterion {cid}: {status} ({len(e['passed'])}/{n} checks) {e['text']}"
        if e["failed"]:
            line += " | failing: " + ", ".join(e["failed"])
        tr.write_line(line)
