"""Acceptance reporting: one PASS/FAIL line per criterion, plus suite timing.

Tests in ``test_acceptance.py`` carry ``@pytest.mark.criterion(N, "text")``.
Criterion 9 (whole run under 60 s) is judged here from the session clock
and fails the run when exceeded.
"""

from __future__ import annotations

import os
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

SUITE_BUDGET_S = 60.0
_results: dict[int, dict] = {}
_start = [0.0]


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion covered by the test")


def pytest_sessionstart(session):
    _start[0] = time.perf_counter()


def pytest_collection_modifyitems(session, config, items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            num, text = mark.args
            _results.setdefault(num, {"text": text, "outcomes": []})


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    for num, text in _marks_of(report):
        _results.setdefault(num, {"text": text, "outcomes": []})["outcomes"].append(report.outcome)


def _marks_of(report):
    return [tuple(v) for k, v in report.user_properties if k == "criterion"]


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is not None and ("criterion", mark.args) not in item.user_properties:
        item.user_properties.append(("criterion", mark.args))
    yield


def _elapsed() -> float:
    return time.perf_counter() - _start[0]


def pytest_sessionfinish(session, exitstatus):
    if _results and _elapsed() > SUITE_BUDGET_S and session.exitstatus == 0:
        session.exitstatus = 1


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(_results):
        res = _results[num]
        outs = res["outcomes"]
        ok = bool(outs) and all(o == "passed" for o in outs)
        status = "PASS" if ok else ("NOT RUN" if not outs else "FAIL")
        tr.write_line(f"criterion {num}: {status}  {res['text']}")
    elapsed = _elapsed()
    status = "PASS" if elapsed <= SUITE_BUDGET_S else "FAIL"
    tr.write_line(f"criterion 9: {status}  run time {elapsed:.1f} s (budget {SUITE_BUDGET_S:.0f} s)")
