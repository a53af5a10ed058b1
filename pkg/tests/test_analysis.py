from __future__ import annotations

import re
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import midlines, q2
from traptile.analysis import (
    PlaneView,
    Verdict,
    certainly_above,
    check_conditions,
    check_lemma_001,
    eval_Fc,
    fc_slope,
    find_power_relation,
    log_ratio,
    plot_plane,
)
from traptile.errors import DomainError, PreconditionError
from traptile.figures import G, INFINITY
from traptile.synth import proposition_last_sequence

A = q2("3+sqrt(2)")


def test_reflexive_equality():
    r = check_conditions(A, A)
    assert r.verdicts == (Verdict.HOLDS, Verdict.HOLDS, Verdict.EQUALITY)
    assert r.evidence["iii"]["relation"] == [1, 1]


def test_power_relation_equality():
    r = check_conditions(A, q2("12/7+3/7*sqrt(2)"))
    assert r.cond_iii is Verdict.EQUALITY
    assert r.evidence["iii"]["relation"] == [1, 2]


def test_cond_i_fails():
    r = check_conditions(A, q2("3+2*sqrt(2)"))
    assert r.cond_i is Verdict.FAILS


def test_strict_holds_and_fails():
    assert check_conditions(A, q2("6+2*sqrt(2)")).cond_iii is Verdict.HOLDS
    # ratio ln G(b)/ln G(conj b) below the prototile's: b close to its conjugate side
    r = check_conditions(A, q2("5+3/2*sqrt(2)"))
    assert r.cond_i is Verdict.HOLDS
    direct = log_ratio(q2("5+3/2*sqrt(2)")) - log_ratio(A)
    expected = Verdict.HOLDS if direct.a > 0 else Verdict.FAILS
    assert r.cond_iii is expected


def test_preconditions():
    with pytest.raises(PreconditionError):
        check_conditions(q2("1+sqrt(2)"), A)
    with pytest.raises(PreconditionError):
        check_conditions(A, Fraction(1, 2))


def test_unknown_when_cap_reached_without_relation():
    # G(b) = G(a)^2 needs q = 2 > E_max; equal log-ratios never separate
    b = proposition_last_sequence(A, 2)[1][0]
    r = check_conditions(A, b, precision_cap=128, e_max=1)
    assert r.cond_iii is Verdict.UNKNOWN


def test_power_relation_search_is_exact():
    ga = G(A)
    assert find_power_relation(ga ** 3, ga ** 2, 10) == (2, 3)
    assert find_power_relation(ga, G(q2("5+sqrt(2)")), 8) is None


def test_verdict_stable_under_precision():
    b = q2("7+2*sqrt(2)")
    low = check_conditions(A, b, precision_cap=128)
    high = check_conditions(A, b, precision_cap=8192)
    assert low.cond_iii == high.cond_iii


def test_eval_Fc_examples():
    box = eval_Fc(Fraction(1, 2), 3)
    # (1 + sqrt(1/2)) / (1 - sqrt(1/2)) = 3 + 2 sqrt 2
    value = 3 + 2 * 2 ** 0.5
    assert box.a <= value + 1e-12 and box.b >= value - 1e-12
    near_one = eval_Fc(Fraction(999999, 1000000), 3)
    assert abs(float(near_one.mid) - 3) < 1e-3
    with pytest.raises(DomainError):
        eval_Fc(Fraction(3, 2), 3)
    with pytest.raises(DomainError):
        eval_Fc(Fraction(1, 2), 1)


def test_lemma_001_examples():
    assert check_lemma_001(3, 2)
    with pytest.raises(DomainError):
        check_lemma_001(2, 2)


@given(midlines(lo=1, hi=30), midlines(lo=1, hi=30))
def test_lemma_001_property(z, t):
    if z == t:
        return
    z, t = max(z, t), min(z, t)
    assert check_lemma_001(z, t)


@settings(max_examples=20)
@given(st.sampled_from([Fraction(1, 5), Fraction(1, 2), Fraction(4, 5)]),
       st.fractions(min_value=Fraction(3, 2), max_value=30, max_denominator=16))
def test_Fc_slope_exceeds_inverse_c(c, x):
    slope = fc_slope(c, x, Fraction(1, 2 ** 12), 128)
    assert certainly_above(slope, 1 / c)


def test_plot_plane_structure(tmp_path):
    out = tmp_path / "plane.svg"
    svg = plot_plane(A, [-3, 0, 3, INFINITY], str(out))
    assert out.read_text() == svg
    levels = set(re.findall(r'data-level="([^"]+)"', svg))
    assert levels == {"-3", "0", "3", "inf"}
    assert 'id="curve-Fc"' in svg and 'id="ray-prototile"' in svg


def test_plot_plane_empty_levels():
    svg = plot_plane(A, [])
    assert "data-level" not in svg
    assert 'id="ray-diagonal"' in svg


def _distance_to_polyline(pt, pts):
    best = float("inf")
    for (x1, y1), (x2, y2) in zip(pts, pts[1:]):
        dx, dy = x2 - x1, y2 - y1
        u = max(0.0, min(1.0, ((pt[0] - x1) * dx + (pt[1] - y1) * dy) / (dx * dx + dy * dy)))
        best = min(best, ((x1 + u * dx - pt[0]) ** 2 + (y1 + u * dy - pt[1]) ** 2) ** 0.5)
    return best


def test_sequence_points_lie_on_curve():
    svg = plot_plane(A, [], sequence_points=3)
    curve = re.search(r'<polyline points="([^"]+)"[^>]*id="curve-Fc"', svg).group(1)
    pts = [tuple(map(float, p.split(","))) for p in curve.split()]
    circles = re.findall(r'<circle cx="([^"]+)" cy="([^"]+)"', svg)
    assert len(circles) == 3
    for cx, cy in circles:
        assert _distance_to_polyline((float(cx), float(cy)), pts) < 1.5


def test_plane_view_maps_origin():
    view = PlaneView(10, 10, size=100, margin=10)
    assert view.px(0, 0) == (10, 90)
