"""The compiled and pure-Python arithmetic cores must agree exactly."""

from __future__ import annotations

import importlib
import operator
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import D2, small_fractions
from traptile import field

pure = importlib.import_module("traptile.field._pure")
try:
    ext = importlib.import_module("traptile.field._speedups")
except ImportError:  # extension not built
    ext = None

needs_ext = pytest.mark.skipif(ext is None, reason="compiled backend not built")

BINOPS = [operator.add, operator.sub, operator.mul, operator.truediv, operator.lt, operator.le, operator.eq]

big = st.fractions(min_value=-10 ** 30, max_value=10 ** 30, max_denominator=10 ** 25)


def test_selected_backend_is_reported():
    assert field.BACKEND in ("pure", "ext")
    if ext is not None:
        assert field.BACKEND == "ext" or __import__("os").environ.get("TRAPTILE_BACKEND") == "pure"


@needs_ext
@given(st.one_of(small_fractions, big), st.one_of(small_fractions, big),
       st.one_of(small_fractions, big), st.one_of(small_fractions, big),
       st.sampled_from(BINOPS))
def test_binary_operations_agree(a, b, c, d, op):
    x1, y1 = pure.QuadraticNumber(a, b, D2), pure.QuadraticNumber(c, d, D2)
    x2, y2 = ext.QuadraticNumber(a, b, D2), ext.QuadraticNumber(c, d, D2)
    if op is operator.truediv and c == 0 and d == 0:
        with pytest.raises(ZeroDivisionError):
            op(x2, y2)
        return
    r1, r2 = op(x1, y1), op(x2, y2)
    if isinstance(r1, bool):
        assert r1 == r2
    else:
        assert r1.parts == r2.parts
        assert str(r1) == str(r2)
        assert hash(r1) == hash(r2)


@needs_ext
@given(small_fractions, small_fractions, st.integers(min_value=-6, max_value=6))
def test_unary_operations_agree(a, b, n):
    x1, x2 = pure.QuadraticNumber(a, b, D2), ext.QuadraticNumber(a, b, D2)
    assert (-x1).parts == (-x2).parts
    assert x1.conjugate().parts == x2.conjugate().parts
    assert x1.sign() == x2.sign()
    assert float(x1) == float(x2)
    if a or b:
        assert (x1 ** n).parts == (x2 ** n).parts


@needs_ext
def test_mixed_operands_with_python_numbers():
    x = ext.QuadraticNumber(Fraction(1, 2), 3, D2)
    assert (1 + x).parts == (x + 1).parts
    assert (Fraction(1, 3) - x).parts == (-(x - Fraction(1, 3))).parts
    assert (2 / x * x) == 2
    assert 0 < x and x > Fraction(1, 2)
