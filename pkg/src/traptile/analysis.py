"""Necessary conditions for trivial tilings and the supporting analytic lemmas.

For a prototile t(a) with 1 < conj(a) < a, a midline b reachable by a trivial
tiling satisfies

    (i)   1 < conj(b) < b
    (ii)  conj(b)/b >= conj(a)/a
    (iii) ln G(b) / ln G(conj b) >= ln G(a) / ln G(conj a)

(i) and (ii) are exact sign tests.  (iii) compares logarithms with certified
interval arithmetic; equality is certified only by an exact power relation
G(b)^p = G(a)^q.
"""

from __future__ import annotations

import enum
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from xml.sax.saxutils import escape

import mpmath
from mpmath import iv

from .errors import DomainError, PreconditionError
from .field import QuadraticNumber, as_qnum, to_interval
from .figures import G, INFINITY

DEFAULT_PRECISION = 128
DEFAULT_PRECISION_CAP = 4096
DEFAULT_E_MAX = 64


class Verdict(str, enum.Enum):
    HOLDS = "HOLDS"
    FAILS = "FAILS"
    EQUALITY = "EQUALITY"
    UNKNOWN = "UNKNOWN"

    def __str__(self) -> str:
        return self.value


# ---------------------------------------------------------------------------
# certified intervals


@contextmanager
def _precision(bits: int):
    saved = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = saved


def _iv_fraction(q: Fraction):
    return iv.mpf(q.numerator) / iv.mpf(q.denominator)


def interval_of(x, bits: int):
    """Outward-rounded mpmath interval containing the exact value ``x``.

    Call under the desired ``iv.prec``.
    """
    if isinstance(x, Fraction):
        return _iv_fraction(x)
    if isinstance(x, int):
        return iv.mpf(x)
    lo, hi = to_interval(as_qnum(x), bits)
    return iv.mpf([_iv_fraction(lo).a, _iv_fraction(hi).b])


def _positive_interval(x, bits: int):
    """Enclosure of ``x > 0`` tight enough to exclude zero."""
    extra = 0
    while True:
        box = interval_of(x, bits + extra)
        if box.a > 0:
            return box
        extra += max(bits, 64)


def log_interval(x, bits: int):
    """Certified enclosure of ln(x) for an exact positive field element."""
    with _precision(bits + 16):
        return iv.log(_positive_interval(x, bits + 16))


def certainly_above(box, value, bits: int = DEFAULT_PRECISION) -> bool:
    """True when every point of ``box`` exceeds the exact number ``value``."""
    with _precision(bits + 16):
        return bool(box.a > interval_of(value if not isinstance(value, int) else Fraction(value), bits).b)


def _decimal(x, digits: int = 30) -> str:
    return mpmath.nstr(mpmath.mpf(x), digits)


def _interval_json(box, bits: int) -> dict:
    return {"lo": _decimal(box.a), "hi": _decimal(box.b), "precision_bits": bits}


# ---------------------------------------------------------------------------
# condition report


@dataclass
class ConditionReport:
    cond_i: Verdict
    cond_ii: Verdict
    cond_iii: Verdict
    evidence: dict = field(default_factory=dict)

    @property
    def verdicts(self) -> tuple[Verdict, Verdict, Verdict]:
        return self.cond_i, self.cond_ii, self.cond_iii

    def any_fails(self) -> bool:
        return Verdict.FAILS in self.verdicts

    def to_json(self) -> dict:
        return {
            "cond_i": self.cond_i.value,
            "cond_ii": self.cond_ii.value,
            "cond_iii": self.cond_iii.value,
            "evidence": self.evidence,
        }


def _check_prototile(a: QuadraticNumber):
    if a.is_rational() or a.ctx is None:
        raise PreconditionError(f"a must be irrational, got {a}")
    if not (1 < a.conjugate() < a):
        raise PreconditionError(f"need 1 < conj(a) < a, got a = {a}")


def find_power_relation(gb: QuadraticNumber, ga: QuadraticNumber, e_max: int,
                        ratio_hint: float | None = None) -> tuple[int, int] | None:
    """Smallest p (then q) in [1, e_max] with gb**p == ga**q, checked exactly.

    ``ratio_hint`` approximates ln gb / ln ga; when given, only the integers
    next to p * ratio_hint are tried as q.
    """
    ga_pows: dict[int, QuadraticNumber] = {}

    def ga_pow(q: int) -> QuadraticNumber:
        if q not in ga_pows:
            ga_pows[q] = ga ** q
        return ga_pows[q]

    gb_p = gb ** 0
    for p in range(1, e_max + 1):
        gb_p = gb_p * gb
        if ratio_hint is None:
            candidates = range(1, e_max + 1)
        else:
            est = p * ratio_hint
            base = int(est)
            candidates = [q for q in (base, base + 1, base - 1) if 1 <= q <= e_max]
        for q in candidates:
            if gb_p == ga_pow(q):
                return p, q
    return None


def check_conditions(a, b, precision_cap: int = DEFAULT_PRECISION_CAP,
                     e_max: int = DEFAULT_E_MAX) -> ConditionReport:
    a = as_qnum(a)
    b = as_qnum(b, a.ctx)
    _check_prototile(a)
    if not b > 1:
        raise PreconditionError(f"b must exceed 1, got {b}")
    if precision_cap < DEFAULT_PRECISION:
        raise ValueError(f"precision_cap must be at least {DEFAULT_PRECISION}")
    if e_max < 1:
        raise ValueError("E_max must be at least 1")
    ab, bb = a.conjugate(), b.conjugate()
    evidence: dict = {}

    cond_i = Verdict.HOLDS if 1 < bb < b else Verdict.FAILS
    evidence["i"] = {"conj_b": str(bb)}
    # a, b > 0, so conj(b)/b >= conj(a)/a  <=>  conj(b)*a >= conj(a)*b
    diff = bb * a - ab * b
    cond_ii = Verdict.HOLDS if diff >= 0 else Verdict.FAILS
    evidence["ii"] = {"conj_b*a - conj_a*b": str(diff)}

    if cond_i is Verdict.FAILS:
        evidence["iii"] = {"reason": "not evaluable: ln G(conj b) needs conj(b) > 1"}
        return ConditionReport(cond_i, cond_ii, Verdict.FAILS, evidence)

    ga, gb = G(a), G(b)
    if ga == gb:
        evidence["iii"] = {"relation": [1, 1]}
        return ConditionReport(cond_i, cond_ii, Verdict.EQUALITY, evidence)

    # ln G(.) < 0 for all four arguments; cross-multiplying by the two negative
    # conjugate logs keeps the direction:
    # (iii)  <=>  D = ln G(b) ln G(conj a) - ln G(a) ln G(conj b) >= 0
    bits = DEFAULT_PRECISION
    hint = None
    while True:
        la, lb = log_interval(ga, bits), log_interval(gb, bits)
        lab, lbb = log_interval(ga.conjugate(), bits), log_interval(gb.conjugate(), bits)
        with _precision(bits + 16):
            D = lb * lab - la * lbb
            hint = float(mpmath.mpf((lb / la).mid))
        if D.a > 0 or D.b < 0:
            evidence["iii"] = {"D": _interval_json(D, bits)}
            return ConditionReport(cond_i, cond_ii, Verdict.HOLDS if D.a > 0 else Verdict.FAILS, evidence)
        if bits >= precision_cap:
            break
        bits = min(2 * bits, precision_cap)

    relation = find_power_relation(gb, ga, e_max, hint)
    if relation is not None:
        evidence["iii"] = {"relation": list(relation), "D": _interval_json(D, bits)}
        return ConditionReport(cond_i, cond_ii, Verdict.EQUALITY, evidence)
    evidence["iii"] = {"D": _interval_json(D, bits), "searched_exponents": e_max}
    return ConditionReport(cond_i, cond_ii, Verdict.UNKNOWN, evidence)


# ---------------------------------------------------------------------------
# analytic lemmas


def _real_interval(c, bits: int):
    if isinstance(c, str):
        c = Fraction(c)
    if isinstance(c, (int, Fraction, QuadraticNumber)):
        return interval_of(c if not isinstance(c, int) else Fraction(c), bits)
    if isinstance(c, float):
        return iv.mpf(Fraction(c).numerator) / iv.mpf(Fraction(c).denominator)
    # mpf / interval inputs are taken as given
    return iv.mpf(c)


def eval_Fc(c, x, precision: int = DEFAULT_PRECISION):
    """Certified enclosure of (1 + G(x)^c) / (1 - G(x)^c) for 0 < c < 1, x > 1."""
    x = as_qnum(x)
    if not x > 1:
        raise DomainError(f"x must exceed 1, got {x}")
    with _precision(precision + 16):
        cc = _real_interval(c, precision + 16)
        if not (cc.a > 0 and cc.b < 1):
            raise DomainError(f"c must lie in (0, 1), got {c}")
        gc = iv.exp(cc * log_interval(G(x), precision))
        return (1 + gc) / (1 - gc)


def fc_slope(c, x, step, precision: int = DEFAULT_PRECISION):
    """Certified enclosure of the central difference (F(x+s) - F(x-s)) / 2s."""
    x, step = as_qnum(x), as_qnum(step)
    if not (step > 0 and x - step > 1):
        raise DomainError("need step > 0 and x - step > 1")
    hi = eval_Fc(c, x + step, precision)
    lo = eval_Fc(c, x - step, precision)
    with _precision(precision + 16):
        return (hi - lo) / (2 * interval_of(step, precision + 16))


def check_lemma_001(z, t, precision: int = DEFAULT_PRECISION, precision_cap: int = DEFAULT_PRECISION_CAP) -> bool:
    """Certified check of t ln G(t) < z ln G(z), i.e. ln G(t)/ln G(z) > z/t."""
    z, t = as_qnum(z), as_qnum(t)
    if not z > t > 1:
        raise DomainError(f"need z > t > 1, got z={z}, t={t}")
    bits = precision
    while True:
        with _precision(bits + 16):
            lhs = interval_of(t, bits) * log_interval(G(t), bits)
            rhs = interval_of(z, bits) * log_interval(G(z), bits)
            if lhs.b < rhs.a:
                return True
            if lhs.a >= rhs.b:
                return False
        if bits >= precision_cap:
            return False
        bits = min(2 * bits, precision_cap)


def log_ratio(x, precision: int = DEFAULT_PRECISION):
    """Enclosure of ln G(x) / ln G(conj x); needs 1 < conj(x) < x."""
    x = as_qnum(x)
    if not 1 < x.conjugate() < x:
        raise DomainError(f"need 1 < conj(x) < x, got {x}")
    with _precision(precision + 16):
        return log_interval(G(x), precision) / log_interval(G(x.conjugate()), precision)


# ---------------------------------------------------------------------------
# the (conj y, y) plane


@dataclass
class PlaneView:
    """Affine map from the plane window [0, x_max] x [0, y_max] to SVG pixels."""

    x_max: float
    y_max: float
    size: float = 600.0
    margin: float = 40.0

    @property
    def scale(self) -> float:
        return (self.size - 2 * self.margin) / max(self.x_max, self.y_max)

    def px(self, xb: float, y: float) -> tuple[float, float]:
        return self.margin + xb * self.scale, self.size - self.margin - y * self.scale

    def inside(self, xb: float, y: float) -> bool:
        return 0 <= xb <= self.x_max and 0 <= y <= self.y_max


def _level_curve(r, sqrt_d: float, view: PlaneView, samples: int) -> list[list[tuple[float, float]]]:
    """Pieces of sqrt(d)(y*yb - 1) = r(y - yb), i.e. h(y) = r, inside the window."""
    if r == INFINITY:
        return [[(0.0, 0.0), (min(view.x_max, view.y_max),) * 2]]
    r = float(r)
    runs: list[list[tuple[float, float]]] = [[]]
    for k in range(samples + 1):
        yb = view.x_max * k / samples
        den = sqrt_d * yb - r
        y = None if abs(den) < 1e-12 else (sqrt_d - r * yb) / den
        if y is not None and view.inside(yb, y):
            runs[-1].append((yb, y))
        elif runs[-1]:
            runs.append([])
    return [run for run in runs if len(run) > 1]


def _polyline(points, view: PlaneView, **attrs) -> str:
    pts = " ".join("{:.3f},{:.3f}".format(*view.px(x, y)) for x, y in points)
    extra = " ".join(f'{k.replace("_", "-")}="{v}"' for k, v in attrs.items())
    return f'<polyline points="{pts}" fill="none" {extra}/>'


def fc_curve_points(a, view: PlaneView, samples: int = 400, precision: int = 64) -> list[tuple[float, float]]:
    """Samples of y = F_c(yb) with c = ln G(a) / ln G(conj a), yb > 1."""
    a = as_qnum(a)
    c = log_ratio(a, precision)
    c_mid = mpmath.mpf(c.mid)
    out = []
    for k in range(1, samples + 1):
        yb = 1 + (view.x_max - 1) * k / samples
        g = ((yb - 1) / (yb + 1)) ** float(c_mid)
        y = (1 + g) / (1 - g)
        if view.inside(yb, y):
            out.append((yb, y))
    return out


def plot_plane(a, levels, out=None, sequence_points: int = 3, size: float = 600.0) -> str:
    """SVG of the (conj y, y) half-plane.

    Draws the h-level hyperbolas for ``levels`` (``INFINITY`` for the diagonal),
    the rays y = conj y and conj y / y = conj a / a, the curve y = F_c(conj y)
    through (conj a, a), and the points (conj b_n, b_n) of the power sequence.
    ``out`` may be a path or a writable text stream.
    """
    from .synth import proposition_last_sequence

    a = as_qnum(a)
    _check_prototile(a)
    fa, fab = float(a), float(a.conjugate())
    lim = 1.25 * fa
    view = PlaneView(lim, lim, size=size)
    sqrt_d = float(mpmath.sqrt(mpmath.mpf(a.ctx.d.numerator) / a.ctx.d.denominator))

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size:g}" height="{size:g}" '
        f'viewBox="0 0 {size:g} {size:g}">',
        f"<title>{escape(f'plane for a = {a}')}</title>",
    ]
    x0, y0 = view.px(0, 0)
    x1, _ = view.px(view.x_max, 0)
    _, y1 = view.px(0, view.y_max)
    parts.append(f'<g id="axes" stroke="#000"><line x1="{x0:.3f}" y1="{y0:.3f}" x2="{x1:.3f}" y2="{y0:.3f}"/>'
                 f'<line x1="{x0:.3f}" y1="{y0:.3f}" x2="{x0:.3f}" y2="{y1:.3f}"/></g>')

    parts.append('<g id="levels" stroke="#6baed6">')
    for r in levels:
        label = "inf" if r == INFINITY else str(Fraction(r))
        for run in _level_curve(r, sqrt_d, view, 600):
            parts.append(_polyline(run, view, stroke_width="1", data_level=label))
    parts.append("</g>")

    diag = (min(view.x_max, view.y_max),) * 2
    parts.append(_polyline([(0.0, 0.0), diag], view, id="ray-diagonal", stroke="#000", stroke_dasharray="4 3"))
    slope = fa / fab
    end = (view.y_max / slope, view.y_max) if slope * view.x_max > view.y_max else (view.x_max, slope * view.x_max)
    parts.append(_polyline([(0.0, 0.0), end], view, id="ray-prototile", stroke="#000", stroke_dasharray="4 3"))

    curve = fc_curve_points(a, view)
    if len(curve) > 1:
        parts.append(_polyline(curve, view, id="curve-Fc", stroke="#d62728", stroke_width="1.5"))

    parts.append('<g id="points">')
    for n, (b, _) in enumerate(proposition_last_sequence(a, max(sequence_points, 1)), start=1):
        px, py = view.px(float(b.conjugate()), float(b))
        parts.append(f'<circle cx="{px:.3f}" cy="{py:.3f}" r="3" fill="#000" data-n="{n}" data-b="{escape(str(b))}"/>')
    parts.append("</g>")
    parts.append("</svg>")
    text = "\n".join(parts) + "\n"
    if out is not None:
        if hasattr(out, "write"):
            out.write(text)
        else:
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(text)
    return text


__all__ = [
    "ConditionReport",
    "PlaneView",
    "Verdict",
    "check_conditions",
    "certainly_above",
    "check_lemma_001",
    "eval_Fc",
    "fc_curve_points",
    "fc_slope",
    "find_power_relation",
    "interval_of",
    "log_interval",
    "log_ratio",
    "plot_plane",
]
