import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from pwlchaos.maps import period3_map, period4_map, period5_map  # noqa: E402
from pwlchaos.pwl import PwlFunction  # noqa: E402

small_rationals = st.fractions(min_value=0, max_value=1, max_denominator=12)


@st.composite
def self_maps(draw, max_points=7):
    """Random PWL self-maps of [0, 1] with small-denominator breakpoints."""
    k = draw(st.integers(min_value=2, max_value=max_points))
    inner = draw(st.lists(small_rationals.filter(lambda q: 0 < q < 1), min_size=k - 2, max_size=k - 2, unique=True))
    xs = [Fraction(0)] + sorted(inner) + [Fraction(1)]
    ys = draw(st.lists(small_rationals, min_size=len(xs), max_size=len(xs)))
    return PwlFunction(tuple(xs), tuple(ys))


@st.composite
def maps_and_points(draw):
    f = draw(self_maps())
    x = draw(small_rationals)
    return f, x


@pytest.fixture
def p3():
    return period3_map()


@pytest.fixture
def p4():
    return period4_map()


@pytest.fixture
def p5():
    return period5_map()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
