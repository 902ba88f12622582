import numpy as np
import pytest
from hypothesis import strategies as st

finite = st.floats(min_value=-2.0, max_value=2.0, allow_nan=False)
angles = st.floats(min_value=-2 * np.pi, max_value=2 * np.pi, allow_nan=False)
vec3 = st.tuples(finite, finite, finite)
probe = st.tuples(angles, angles, angles)


@st.composite
def ball_points(draw):
    """Points in the closed unit ball (rescaled, so the boundary is reachable)."""
    v = np.array(draw(st.tuples(*[st.floats(-1, 1)] * 3)))
    n = np.linalg.norm(v)
    return tuple(v / n) if n > 1 else tuple(v)


@st.composite
def octahedron_points(draw):
    v = np.array(draw(st.tuples(*[st.floats(-1, 1)] * 3)))
    l1 = np.abs(v).sum()
    return tuple(v / l1) if l1 > 1 else tuple(v)


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


_CRITERIA: list[tuple[str, bool, str]] = []


@pytest.fixture
def criterion():
    """Record one acceptance line: criterion(name, passed, detail)."""

    def record(name: str, passed: bool, detail: str) -> bool:
        _CRITERIA.append((name, bool(passed), detail))
        print(f"{'PASS' if passed else 'FAIL'} {name}: {detail}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in _CRITERIA:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'} {name}: {detail}")
