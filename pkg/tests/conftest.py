import math

import pytest
from hypothesis import strategies as st

from giant_atom import AtomParams, ChiralCoupling, GeometryPhase

PI = math.pi

rates = st.floats(0.0, 5.0, allow_nan=False, allow_infinity=False)
couplings = st.builds(ChiralCoupling, rates, rates, rates, rates)
detunings = st.floats(-30.0, 30.0, allow_nan=False)
drives = st.one_of(st.just(0.0), st.floats(1e-3, 10.0))
taus = st.floats(0.0, 3.0, allow_nan=False)
thetas = st.floats(0.0, 2 * PI, exclude_max=True, allow_nan=False)


@pytest.fixture
def buec():
    """Second point has exchanged chirality, (1, 3, 3, 1)."""
    return ChiralCoupling(1.0, 3.0, 3.0, 1.0)


@pytest.fixture
def bec():
    return ChiralCoupling(1.0, 3.0, 1.0, 3.0)


@pytest.fixture
def resonant():
    return AtomParams(0.0)


@pytest.fixture
def markov():
    return GeometryPhase.markovian


# one line per acceptance criterion, filled in by test_acceptance
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
