import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from chainfold.root_datum import build_root_datum  # noqa: E402
from chainfold.stacky_fan import stacky_fan  # noqa: E402

# the two-cone fan in the A2 adjoint chamber: beta1, beta3 on the walls
B1, B2, B3 = (0, 1), (1, 1), (1, 0)

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def a2():
    return build_root_datum("A", 2, "adjoint")


@pytest.fixture(scope="session")
def two_cone_fan(a2):
    return stacky_fan(a2, [B1, B2, B3], [(0, 1), (1, 2)])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
