from __future__ import annotations

import pytest

from hybrid_sums.hp_numeric import PrecisionContext

# filled by test_acceptance.py, printed after the run
ACCEPTANCE_LINES: list = []


@pytest.fixture
def ctx():
    return PrecisionContext(192)


@pytest.fixture
def ctx_for():
    return PrecisionContext.for_modulus


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
