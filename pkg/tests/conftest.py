import numpy as np
import pytest
from hypothesis import strategies as st

from entangled_ess import SymmetricGame2, SymmetricGame3

G2A = SymmetricGame2(3, 0, 5, 1)
G2B = SymmetricGame2(1, 0, 1, 1)
G3A = SymmetricGame3(0, 1, 2, 0, 0, 1)
G3B = SymmetricGame3(2, 0, 0, 0, 1, 0)
G3C = SymmetricGame3(0, 0, 0, 0, 1, 1)
CONST2 = SymmetricGame2(2.5, 2.5, 2.5, 2.5)
CONST3 = SymmetricGame3(*[-1.5] * 6)

ROOT_LO = (3 - np.sqrt(3)) / 6
ROOT_HI = (3 + np.sqrt(3)) / 6

payoff_values = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)
unit = st.floats(min_value=0.0, max_value=1.0)
games2 = st.builds(SymmetricGame2, payoff_values, payoff_values, payoff_values, payoff_values)
games3 = st.builds(SymmetricGame3, *[payoff_values] * 6)


def random_game2(rng, low=-1.0, high=1.0):
    return SymmetricGame2(*rng.uniform(low, high, size=4))


def random_game3(rng, low=-1.0, high=1.0):
    return SymmetricGame3(*rng.uniform(low, high, size=6))


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
