from __future__ import annotations

from functools import lru_cache

import pytest

from lieform.catalog import builtin_algebras, builtin_pairs
from lieform.obstruction import run_battery

_ACCEPTANCE: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): one acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    number, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _ACCEPTANCE[number] = (title, rep.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, outcome = _ACCEPTANCE[number]
        flag = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{flag}] {number}. {title}")


@lru_cache(maxsize=None)
def pair_specs() -> dict:
    return {p.name: p for p in builtin_pairs()}


@lru_cache(maxsize=None)
def algebras() -> dict:
    return {a.name: a for a in builtin_algebras()}


@lru_cache(maxsize=None)
def battery(name: str):
    spec = pair_specs()[name]
    return run_battery(spec.name, spec.g, spec.subalgebra(), family=spec.family)


@pytest.fixture(scope="session")
def specs():
    return pair_specs()
