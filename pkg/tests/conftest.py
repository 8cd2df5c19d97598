import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from stationary.core import validate

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def _normalize(a):
    return a / a.sum(axis=1, keepdims=True)


@st.composite
def stochastic_matrices(draw, n_min=1, n_max=10, sparse=False):
    """Row-stochastic matrices; with ``sparse`` rows may contain exact zeros."""
    n = draw(st.integers(n_min, n_max))
    a = draw(arrays(np.float64, (n, n), elements=st.floats(0.0, 1.0)))
    if sparse:
        mask = draw(arrays(np.bool_, (n, n)))
        a = np.where(mask, a, 0.0)
    # guarantee a nonzero row sum
    a[np.arange(n), draw(st.permutations(range(n)))] += 0.5
    return validate(_normalize(a))


@st.composite
def irreducible_matrices(draw, n_min=2, n_max=10):
    """Irreducible matrices: a planted n-cycle plus random sparse support."""
    n = draw(st.integers(n_min, n_max))
    order = np.array(draw(st.permutations(range(n))))
    a = draw(arrays(np.float64, (n, n), elements=st.floats(0.0, 1.0)))
    a = np.where(draw(arrays(np.bool_, (n, n))), a, 0.0)
    a[order, np.roll(order, -1)] += 0.2
    return validate(_normalize(a))


@pytest.fixture
def two_state():
    return validate([[0.7, 0.3], [0.6, 0.4]])


@pytest.fixture
def swap():
    return validate([[0.0, 1.0], [1.0, 0.0]])


def pytest_terminal_summary(terminalreporter):
    import sys
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
