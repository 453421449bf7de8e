from fractions import Fraction

import pytest
from hypothesis import strategies as st

from tripow.series import Series

F = Fraction


def S(*coeffs, order=None):
    """Series from leading coefficients; order defaults to len - 1."""
    if order is None:
        order = len(coeffs) - 1
    return Series.of(coeffs, order)


small_int = st.integers(min_value=-3, max_value=3)
nonzero_int = small_int.filter(bool)


@st.composite
def series_st(draw, order, const=None, linear_nonzero=False):
    cs = draw(st.lists(small_int, min_size=order + 1, max_size=order + 1))
    if const is not None:
        cs[0] = draw(const) if isinstance(const, st.SearchStrategy) else const
    if linear_nonzero and order >= 1:
        cs[1] = draw(nonzero_int)
    return Series.of(cs, order)


@pytest.fixture
def rng():
    import random

    return random.Random(20240611)


# --- acceptance reporting -------------------------------------------------
# Lines are printed (visible with -s) and repeated in the terminal summary so
# they show up under plain `pytest` too.

def pytest_configure(config):
    config.acceptance_lines = []


@pytest.fixture
def criterion(request):
    def emit(number, title, passed, detail=""):
        line = f"[{'PASS' if passed else 'FAIL'}] criterion {number:>2}: {title}"
        if detail:
            line += f" ({detail})"
        print(line)
        request.config.acceptance_lines.append(line)
        return passed

    return emit


def pytest_terminal_summary(terminalreporter, config):
    lines = getattr(config, "acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: s.split("criterion", 1)[1]):
            terminalreporter.write_line(line)
