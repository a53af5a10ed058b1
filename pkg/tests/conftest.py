from __future__ import annotations

import sys
from fractions import Fraction

import pytest
from hypothesis import assume, settings, strategies as st

from traptile.field import FieldContext, QuadraticNumber, parse_qnum

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

D2 = FieldContext(2)


def q2(text: str) -> QuadraticNumber:
    return parse_qnum(text, D2)


@pytest.fixture
def ctx2() -> FieldContext:
    return D2


small_fractions = st.fractions(min_value=-20, max_value=20, max_denominator=30)
positive_fractions = st.fractions(min_value=Fraction(1, 50), max_value=40, max_denominator=30)


@st.composite
def quad_numbers(draw, ctx: FieldContext = D2, nonzero: bool = False):
    a = draw(small_fractions)
    b = draw(small_fractions)
    if nonzero and a == 0 and b == 0:
        a = Fraction(1)
    return QuadraticNumber(a, b, ctx)


@st.composite
def midlines(draw, ctx: FieldContext = D2, lo: int = 1, hi: int = 20):
    """Elements of Q[sqrt 2] strictly between ``lo`` and ``hi``."""
    b = draw(st.fractions(min_value=-5, max_value=5, max_denominator=12))
    a = draw(st.fractions(min_value=lo - 8, max_value=hi + 8, max_denominator=12))
    x = QuadraticNumber(a, b, ctx)
    assume(lo < x < hi)
    return x


def pytest_terminal_summary(terminalreporter):
    """One line per acceptance criterion, collected by test_acceptance."""
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
