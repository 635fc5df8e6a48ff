import sys
import pytest
from hypothesis import settings, strategies as st

from swstream.model import ProblemInstance

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def instances(draw, max_n=40, max_r=None, max_l=1, even=False, half_window=False):
    n = draw(st.integers(2 if even else 1, max_n))
    if even:
        n -= n % 2
    k_hi = n // 2 if half_window else n
    k = draw(st.integers(1, max(1, k_hi)))
    r = draw(st.integers(0, max_r if max_r is not None else n))
    l = draw(st.integers(1, min(max_l, k)))
    values = draw(st.lists(st.integers(0, r), min_size=n, max_size=n))
    return ProblemInstance(tuple(values), k, r, l)


@pytest.fixture
def small_instance():
    return ProblemInstance((5, 3, 8, 3, 1, 9, 2, 7), 3, 9)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.REPORT):
        terminalreporter.write_line(mod.REPORT[num])
