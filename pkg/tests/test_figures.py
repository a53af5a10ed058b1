from __future__ import annotations

import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import D2, midlines, q2
from traptile.errors import DomainError, KindMismatch
from traptile.figures import (
    INFINITY,
    G,
    G_inv,
    Leaf,
    StandardFigure,
    combine,
    continued_fraction,
    grid,
    h,
    p,
    pyramid,
    scale_parallelogram,
    t,
    tree_from_json,
    tree_to_json,
)


def test_G_examples():
    assert G(2) == Fraction(1, 3)
    assert G(q2("3+sqrt(2)")) == q2("3/7+1/7*sqrt(2)")
    assert G(G_inv(Fraction(1, 3))) == Fraction(1, 3)
    with pytest.raises(DomainError):
        G(1)


def test_G_inv_examples():
    assert G_inv(Fraction(1, 3)) == 2
    assert G_inv(Fraction(1, 9)) == Fraction(5, 4)
    y = q2("3/5*sqrt(2)")
    assert G_inv(y) == q2("43/7+30/7*sqrt(2)")
    assert G(G_inv(y)) == y
    for bad in (0, 1, Fraction(3, 2)):
        with pytest.raises(DomainError):
            G_inv(bad)


def test_h_examples():
    assert h(2) == INFINITY
    assert h(q2("3+sqrt(2)")) == 3
    assert h(q2("3+2*sqrt(2)")) == 0
    assert G(q2("3+2*sqrt(2)")) == q2("1/2*sqrt(2)")


def test_figure_invariants():
    with pytest.raises(DomainError):
        t(1)
    with pytest.raises(DomainError):
        p(0)
    f = t(3)
    assert (f.bottom, f.top, f.area) == (4, 2, 3)
    assert StandardFigure.from_json(json.loads(json.dumps(f.to_json()))) == f


def test_combine_examples():
    assert combine(5, Leaf(0, t(2)), Leaf(1, t(3))).figure == t(Fraction(7, 5))
    assert combine(2, Leaf(0, p(2)), Leaf(0, p(2))).figure == p(1)
    assert combine(4, Leaf(0, p(Fraction(1, 4))), Leaf(1, t(Fraction(5, 4)))).figure == t(Fraction(3, 2))
    assert combine(1, Leaf(0, p(1)), Leaf(1, p(2))).figure == p(3)
    assert combine(3, Leaf(0, t(2)), Leaf(1, t(3))).figure == p(5)


def test_combine_kind_checks():
    with pytest.raises(KindMismatch):
        combine(1, Leaf(0, t(2)), Leaf(0, p(2)))
    with pytest.raises(KindMismatch):
        combine(4, Leaf(0, t(2)), Leaf(0, t(2)))
    with pytest.raises(KindMismatch):
        grid(2, 2, Leaf(0, t(2)))
    with pytest.raises(KindMismatch):
        pyramid(1, Leaf(0, p(2)))


def test_grid_examples():
    assert grid(1, 16, Leaf(0, p(4))).figure == p(Fraction(1, 4))
    assert grid(1, 1, Leaf(0, p(3))).figure == p(3)
    g = grid(3, 2, Leaf(0, p(2)))
    assert g.figure == p(3) and g.n_pieces == 6


def test_pyramid_examples():
    assert pyramid(1, Leaf(0, t(2))).figure == t(Fraction(5, 4))
    assert pyramid(2, Leaf(0, t(2))).figure == t(Fraction(41, 40))
    assert pyramid(3, Leaf(0, t(2))).n_pieces == 8


@given(midlines(), st.integers(min_value=1, max_value=4))
def test_pyramid_power_law(a, levels):
    c = pyramid(levels, Leaf(0, t(a))).figure.param
    assert G(c) == G(a) ** (2 ** levels)
    assert 1 < c < a


@given(midlines(), midlines())
def test_case5_multiplies_G(a, b):
    c = combine(5, Leaf(0, t(a)), Leaf(1, t(b))).figure.param
    assert G(c) == G(a) * G(b)


@given(midlines(), midlines())
def test_G_monotone_and_closed(x, y):
    if x < y:
        assert G(x) < G(y)
    assert 0 < G(x) < 1
    assert G_inv(G(x)) == x
    assert G(x).ctx in (None, D2)


@given(midlines(), midlines())
def test_h_equality_iff_rational_G_ratio(x, y):
    if x.is_rational() or y.is_rational():
        return
    gx, gy = G(x), G(y)
    if gx.is_rational() or gy.is_rational():
        return
    assert (h(x) == h(y)) == (gx / gy).is_rational()


@given(st.fractions(min_value=Fraction(1, 40), max_value=30, max_denominator=40))
def test_scale_parallelogram(m):
    A = Leaf(0, p(3))
    node = scale_parallelogram(A, m)
    assert node.figure == p(3 * m)
    cf = continued_fraction(m)
    assert node.n_pieces <= sum(cf) + 1


def test_cached_parameters_rederive():
    tree = combine(4, grid(2, 3, combine(3, Leaf(0, t(2)), Leaf(0, t(2)))), pyramid(2, Leaf(0, t(2))))
    for node in tree.iter_nodes():
        kids = node.children
        if len(kids) == 2:
            assert combine(node.case, kids[0], kids[1]).figure == node.figure


def test_tree_json_round_trip():
    a = q2("3+sqrt(2)")
    tree = combine(5, Leaf(0, t(a)), pyramid(1, Leaf(0, t(a))))
    obj = json.loads(json.dumps(tree_to_json(tree)))
    assert obj["node"] == "combine"
    again = tree_from_json(obj, D2)
    assert again.figure == tree.figure
    assert tree_to_json(again) == tree_to_json(tree)
