"""Shared fixtures and the acceptance summary printed at the end of a run."""

import numpy as np
import pytest

from epdiff1d import make_grid

# criterion -> list of (label, passed, detail); filled by test_acceptance
ACCEPTANCE = {}


def record(criterion, label, passed, detail):
    ACCEPTANCE.setdefault(criterion, []).append((label, bool(passed), detail))
    return passed


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for crit in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[crit]
        ok = all(p for _, p, _ in parts)
        tr.write_line(f"{crit} {'PASS' if ok else 'FAIL'}")
        for label, passed, detail in parts:
            tr.write_line(f"    {'pass' if passed else 'FAIL'}  {label}: {detail}")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def grid9():
    return make_grid(4, 1.0)


@pytest.fixture
def grid17():
    return make_grid(8, 1.0)
