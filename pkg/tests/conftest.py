import numpy as np
import pytest
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from photonic import Superposition

ACCEPTANCE_LINES = []


def lorentz_boost_momentum(p, v):
    """Oracle: boost massless momenta ``p`` (N, 3) by velocity ``v`` with the 4x4 matrix."""
    v = np.asarray(v, dtype=float)
    speed = np.linalg.norm(v)
    gamma = 1.0 / np.sqrt(1.0 - speed * speed)
    n = v / speed
    L = np.eye(4)
    L[0, 0] = gamma
    L[0, 1:] = L[1:, 0] = gamma * v
    L[1:, 1:] += (gamma - 1.0) * np.outer(n, n)
    four = np.column_stack([np.linalg.norm(p, axis=1), p])
    return (four @ L.T)[:, 1:]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def unit_rows(n, rng):
    d = rng.standard_normal((n, 3))
    return d / np.linalg.norm(d, axis=1)[:, None]


def superpositions(min_size=1, max_size=40):
    """Hypothesis strategy for generic superpositions with well-conditioned magnitudes."""
    coords = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)

    def build(a):
        mag = np.linalg.norm(a, axis=1)
        return Superposition(a[mag > 1e-3]) if np.any(mag > 1e-3) else None

    return (
        st.integers(min_size, max_size)
        .flatmap(lambda n: arrays(np.float64, (n, 3), elements=coords))
        .map(build)
        .filter(lambda s: s is not None)
    )


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
