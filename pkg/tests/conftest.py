from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ps12.geometry import POINT_BARY, SUBTRIANGLES, Point2, Triangle

settings.register_profile("ps12", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.large_base_example])
settings.load_profile("ps12")

DEN = 97


@st.composite
def interior_points(draw, k=None):
    """Exact barycentric point strictly inside a subtriangle."""
    if k is None:
        k = draw(st.integers(1, 12))
    a = draw(st.integers(1, DEN - 2))
    b = draw(st.integers(1, DEN - 1 - a))
    lam = (Fraction(DEN - a - b, DEN), Fraction(a, DEN), Fraction(b, DEN))
    if min(lam) <= 0:
        lam = (Fraction(1, 3),) * 3
    tri = [POINT_BARY[i - 1] for i in SUBTRIANGLES[k - 1]]
    return tuple(sum(lam[v] * tri[v][r] for v in range(3)) for r in range(3))


@st.composite
def directions(draw):
    a = Fraction(draw(st.integers(-12, 12)), 7)
    b = Fraction(draw(st.integers(-12, 12)), 5)
    return (-a - b, a, b)


@st.composite
def triangles(draw):
    coords = st.fractions(min_value=-5, max_value=5, max_denominator=6)
    x1, y1 = draw(coords), draw(coords)
    a, b, c, e = (draw(coords) for _ in range(4))
    a = abs(a) + 1
    if a * e - b * c == 0:
        e += 1
    return Triangle(Point2(x1, y1), Point2(x1 + a, y1 + b), Point2(x1 + c, y1 + e))


@pytest.fixture
def unit_triangle():
    return Triangle(Point2(Fraction(0), Fraction(0)), Point2(Fraction(1), Fraction(0)), Point2(Fraction(0), Fraction(1)))


# pass/fail lines from the acceptance suite, repeated in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
