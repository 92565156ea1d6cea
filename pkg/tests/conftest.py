import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from proactive_jamming.params import CANONICAL, SystemParams  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def params() -> SystemParams:
    return CANONICAL


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
