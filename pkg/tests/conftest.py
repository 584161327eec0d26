import os
import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from gridhom.grid import component_count, new_grid  # noqa: E402

settings.register_profile("repo", derandomize=True, max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")

DATA = os.path.join(os.path.dirname(__file__), "..", "src", "gridhom", "data")


def data_file(name: str) -> str:
    return os.path.join(DATA, name)


@st.composite
def grids(draw, min_n=2, max_n=6, knot=True):
    """Random grids; rejection-sampled to knots when ``knot``."""
    n = draw(st.integers(min_n, max_n))
    O = draw(st.permutations(range(n)))
    X = draw(st.permutations(range(n)).filter(lambda X: all(X[j] != O[j] for j in range(n))))
    G = new_grid(n, O, X)
    if knot:
        from hypothesis import assume
        assume(component_count(G) == 1)
    return G


# ---------------------------------------------------------------- acceptance summary

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(k: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[k] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture
def trefoil():
    from gridhom.grid import from_sigma
    return from_sigma([3, 4, 0, 1, 2])
