from __future__ import annotations

import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from spacetime_games import fixtures  # noqa: E402
from spacetime_games.bell import build_bell_game, forward_induction_payoffs  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"

_acceptance: dict[str, str] = {}


@pytest.fixture
def fixture_dir() -> Path:
    return FIXTURES


@pytest.fixture
def pd():
    return fixtures.prisoners_dilemma()


@pytest.fixture
def promise():
    return fixtures.promise_game()


@pytest.fixture
def bell():
    return build_bell_game(forward_induction_payoffs())


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    name = report.nodeid.split("::")[-1]
    if "test_acceptance.py" in report.nodeid and name.startswith("test_ac"):
        _acceptance[name] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance, key=lambda n: int(n.split("_")[1][2:])):
        terminalreporter.write_line(f"{_acceptance[name]}  {name}")
