import numpy as np
import pytest
from scipy.stats import unitary_group

from kerrcat import ModeUnitary

_ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def random_unitary(rng):
    def make():
        return ModeUnitary(unitary_group.rvs(2, random_state=rng))

    return make


@pytest.fixture
def criterion():
    """Record a one-line PASS/FAIL verdict and assert it."""

    def check(label, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'}  {label}: {detail}"
        _ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return check


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
