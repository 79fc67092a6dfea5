import numpy as np
import pytest
from hypothesis import strategies as st

from nonext import builtin_phi, new_distribution

PHI_NAMES = ("tsallis", "cubic", "havrda_charvat")


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture(params=PHI_NAMES)
def phi(request):
    return builtin_phi(request.param)


weights = st.lists(
    st.floats(min_value=0.0, max_value=1e3, allow_nan=False, allow_infinity=False),
    min_size=1,
    max_size=12,
).filter(lambda w: sum(w) > 1e-6)

distributions = weights.map(lambda w: new_distribution(w, normalize=True))

q_values = st.floats(min_value=0.05, max_value=6.0, allow_nan=False).filter(
    lambda q: abs(q - 1.0) > 1e-3
)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
