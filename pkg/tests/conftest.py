import math

import pytest

from landau_osc.core import FieldParams
from landau_osc.quantum_grid import GridSpec

ACCEPTANCE_LINES = []


@pytest.fixture
def unit_field():
    """hbar = m = 1, omega = 2 so the Larmor frequency is 1."""
    return FieldParams.from_omega(2.0)


@pytest.fixture
def small_spec(unit_field):
    return GridSpec.for_field(unit_field, n=64)


@pytest.fixture
def cyclotron_period(unit_field):
    return 2 * math.pi / unit_field.omega


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
