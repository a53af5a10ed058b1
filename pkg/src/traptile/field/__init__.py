"""Exact arithmetic in Q and in a real quadratic field Q[sqrt(d)].

The arithmetic core exists twice: a Cython extension (``_speedups``) and a
pure-Python module (``_pure``) with identical behaviour.  The extension is
used when it has been built, unless ``TRAPTILE_BACKEND=pure`` is set.
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import isqrt

from ..errors import MixedContext, ParseError
from . import _pure
from ._context import FieldContext
from ._text import format_qnum, format_rational, parse_rational, split_qnum


def _load_backend():
    choice = os.environ.get("TRAPTILE_BACKEND", "auto").lower()
    if choice == "pure":
        return _pure, "pure"
    try:
        from . import _speedups
    except ImportError:
        if choice == "ext":
            raise
        return _pure, "pure"
    return _speedups, "ext"


_backend, BACKEND = _load_backend()
QuadraticNumber = _backend.QuadraticNumber

__all__ = [
    "BACKEND",
    "FieldContext",
    "QuadraticNumber",
    "as_qnum",
    "conjugate",
    "floor",
    "format_qnum",
    "format_rational",
    "parse_qnum",
    "parse_rational",
    "sign",
    "sqrt_d",
    "to_interval",
    "to_text",
]


def as_qnum(x, ctx: FieldContext | None = None):
    """Coerce ints, Fractions, strings and QuadraticNumbers to QuadraticNumber."""
    if isinstance(x, QuadraticNumber):
        return x
    if isinstance(x, str):
        return parse_qnum(x, ctx)
    return QuadraticNumber(Fraction(x), 0, ctx)


def sqrt_d(ctx: FieldContext):
    return QuadraticNumber(0, 1, ctx)


def conjugate(x):
    return x.conjugate()


def sign(x) -> int:
    return as_qnum(x).sign()


def parse_qnum(text: str, ctx: FieldContext | None = None):
    """Parse the canonical text form.  ``ctx`` pins d; a mismatch is an error."""
    rat, irr, d = split_qnum(text)
    if d is not None:
        if ctx is None:
            ctx = FieldContext(d)
        elif ctx.d != d:
            raise MixedContext(f"{text!r} uses sqrt({d}) but the context is sqrt({ctx.d})")
        if irr == 0:
            raise ParseError(f"zero coefficient on sqrt in {text!r}")
    return QuadraticNumber(rat, irr, ctx)


def to_text(x) -> str:
    return str(x)


def _sqrt_floor_scaled(n: int, m: int, k: int) -> int:
    """floor(sqrt(n/m) * 2**k) for n >= 0, m > 0."""
    return isqrt((n << (2 * k)) // m)


def to_interval(x, precision_bits: int) -> tuple[Fraction, Fraction]:
    """Dyadic enclosure ``lo <= x <= hi`` with ``hi - lo <= 2**(1 - precision_bits)``.

    Enclosures are built from floor-aligned dyadic intervals, so they are nested
    as ``precision_bits`` grows.
    """
    if precision_bits < 16:
        raise ValueError("precision_bits must be at least 16")
    x = as_qnum(x)
    an, ad, bn, bd = x.parts
    k = precision_bits
    scale = 1 << k
    a_lo = (an * scale) // ad
    a_hi = a_lo if (an * scale) % ad == 0 else a_lo + 1
    if bn == 0:
        return Fraction(a_lo, scale), Fraction(a_hi, scale)
    ctx = x.ctx
    # |b| sqrt(d) = sqrt(b^2 d)
    n = bn * bn * ctx.dn
    m = bd * bd * ctx.dd
    f = _sqrt_floor_scaled(n, m, k)
    exact = f * f * m == n << (2 * k)
    s_lo, s_hi = f, (f if exact else f + 1)
    if bn < 0:
        s_lo, s_hi = -s_hi, -s_lo
    return Fraction(a_lo + s_lo, scale), Fraction(a_hi + s_hi, scale)


def floor(x) -> int:
    """Exact floor of a field element."""
    x = as_qnum(x)
    lo, hi = to_interval(x, 32)
    k = lo.numerator // lo.denominator
    while x < k:
        k -= 1
    while x >= k + 1:
        k += 1
    return k
