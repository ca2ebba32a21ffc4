from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from jpineiro.exact import Poly

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=7)


@st.composite
def polys(draw, max_degree=5, nonzero=False):
    coeffs = draw(st.lists(rationals, min_size=1 if nonzero else 0, max_size=max_degree + 1))
    p = Poly(coeffs)
    if nonzero and p.is_zero():
        p = Poly([draw(rationals.filter(bool))])
    return p


@pytest.fixture
def hand_case():
    from jpineiro.pineiro import ParameterSet

    return ParameterSet((Fraction(2),), (1,), Fraction(2))
