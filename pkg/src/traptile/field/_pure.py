"""Pure-Python backend for exact arithmetic in Q[sqrt(d)].

A value is stored as four Python ints ``an/ad + (bn/bd)*sqrt(d)`` with both
fractions in lowest terms and positive denominators.  The compiled backend in
``_speedups.pyx`` mirrors this file operation for operation.
"""

from __future__ import annotations

import math
import sys
from fractions import Fraction
from math import gcd

from ..errors import DivisionByZero, DomainError, MixedContext
from ._context import FieldContext
from ._text import format_qnum

_HASH_MOD = sys.hash_info.modulus
_HASH_INF = sys.hash_info.inf


def _rat_hash(n, d):
    # identical to Fraction.__hash__ so that rational values hash like Fractions
    try:
        dinv = pow(d, -1, _HASH_MOD)
    except ValueError:
        h = _HASH_INF
    else:
        h = hash(hash(abs(n)) * dinv)
    h = h if n >= 0 else -h
    return -2 if h == -1 else h


def _radd(an, ad, cn, cd):
    g = gcd(ad, cd)
    if g == 1:
        return an * cd + cn * ad, ad * cd
    s = ad // g
    t = an * (cd // g) + cn * s
    g2 = gcd(t, g)
    if g2 == 1:
        return t, s * cd
    return t // g2, s * (cd // g2)


def _rmul(an, ad, cn, cd):
    g1 = gcd(an, cd)
    g2 = gcd(cn, ad)
    if g1 > 1:
        an //= g1
        cd //= g1
    if g2 > 1:
        cn //= g2
        ad //= g2
    return an * cn, ad * cd


def _merge(c1, c2):
    if c1 is c2 or c2 is None:
        return c1
    if c1 is None:
        return c2
    if c1 == c2:
        return c1
    raise MixedContext(f"cannot combine Q[sqrt({c1.d})] with Q[sqrt({c2.d})]")


class QuadraticNumber:
    """Exact element ``a + b*sqrt(d)`` of Q[sqrt(d)]; Q is the ``b == 0`` case.

    ``ctx`` may be ``None`` for purely rational values, which then combine
    with numbers of any context.
    """

    __slots__ = ("an", "ad", "bn", "bd", "ctx")

    def __init__(self, rat=0, irr=0, ctx=None):
        r = Fraction(rat)
        i = Fraction(irr)
        if ctx is not None and not isinstance(ctx, FieldContext):
            ctx = FieldContext(ctx)
        if i != 0 and ctx is None:
            raise DomainError("an irrational part needs a FieldContext")
        self.an = r.numerator
        self.ad = r.denominator
        self.bn = i.numerator
        self.bd = i.denominator
        self.ctx = ctx

    @classmethod
    def _raw(cls, an, ad, bn, bd, ctx):
        x = object.__new__(cls)
        x.an = an
        x.ad = ad
        x.bn = bn
        x.bd = bd
        x.ctx = ctx
        return x

    # -- accessors -----------------------------------------------------------

    @property
    def rat_part(self) -> Fraction:
        return Fraction(self.an, self.ad)

    @property
    def irr_part(self) -> Fraction:
        return Fraction(self.bn, self.bd)

    @property
    def parts(self):
        return (self.an, self.ad, self.bn, self.bd)

    def is_rational(self) -> bool:
        return self.bn == 0

    # -- arithmetic ------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, QuadraticNumber):
            return other
        if isinstance(other, int):
            return QuadraticNumber._raw(other, 1, 0, 1, None)
        if isinstance(other, Fraction):
            return QuadraticNumber._raw(other.numerator, other.denominator, 0, 1, None)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        ctx = _merge(self.ctx, o.ctx)
        an, ad = _radd(self.an, self.ad, o.an, o.ad)
        if o.bn == 0:
            bn, bd = self.bn, self.bd
        elif self.bn == 0:
            bn, bd = o.bn, o.bd
        else:
            bn, bd = _radd(self.bn, self.bd, o.bn, o.bd)
        return QuadraticNumber._raw(an, ad, bn, bd, ctx)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber._raw(-self.an, self.ad, -self.bn, self.bd, self.ctx)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        ctx = _merge(self.ctx, o.ctx)
        if o.bn == 0:
            an, ad = _rmul(self.an, self.ad, o.an, o.ad)
            bn, bd = _rmul(self.bn, self.bd, o.an, o.ad)
            return QuadraticNumber._raw(an, ad, bn, bd, ctx)
        if self.bn == 0:
            an, ad = _rmul(self.an, self.ad, o.an, o.ad)
            bn, bd = _rmul(self.an, self.ad, o.bn, o.bd)
            return QuadraticNumber._raw(an, ad, bn, bd, ctx)
        # (a + b s)(c + e s) = (ac + be d) + (ae + bc) s
        pn, pd = _rmul(self.an, self.ad, o.an, o.ad)
        qn, qd = _rmul(self.bn, self.bd, o.bn, o.bd)
        qn, qd = _rmul(qn, qd, ctx.dn, ctx.dd)
        an, ad = _radd(pn, pd, qn, qd)
        un, ud = _rmul(self.an, self.ad, o.bn, o.bd)
        vn, vd = _rmul(self.bn, self.bd, o.an, o.ad)
        bn, bd = _radd(un, ud, vn, vd)
        return QuadraticNumber._raw(an, ad, bn, bd, ctx)

    __rmul__ = __mul__

    def inverse(self):
        """``1/x`` rationalised by the conjugate: ``conj(x) / (x*conj(x))``."""
        if self.bn == 0:
            if self.an == 0:
                raise DivisionByZero("inverse of zero")
            if self.an < 0:
                return QuadraticNumber._raw(-self.ad, -self.an, 0, 1, self.ctx)
            return QuadraticNumber._raw(self.ad, self.an, 0, 1, self.ctx)
        ctx = self.ctx
        # norm = a^2 - b^2 d, never zero for b != 0
        sn, sd = _rmul(self.an, self.ad, self.an, self.ad)
        tn, td = _rmul(self.bn, self.bd, self.bn, self.bd)
        tn, td = _rmul(tn, td, ctx.dn, ctx.dd)
        nn, nd = _radd(sn, sd, -tn, td)
        if nn < 0:
            nn, nd = -nd, -nn
        else:
            nn, nd = nd, nn
        an, ad = _rmul(self.an, self.ad, nn, nd)
        bn, bd = _rmul(-self.bn, self.bd, nn, nd)
        return QuadraticNumber._raw(an, ad, bn, bd, ctx)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.an == 0 and o.bn == 0:
            raise DivisionByZero("division by zero")
        if o.bn == 0:
            rn, rd = (o.ad, o.an) if o.an > 0 else (-o.ad, -o.an)
            an, ad = _rmul(self.an, self.ad, rn, rd)
            bn, bd = _rmul(self.bn, self.bd, rn, rd)
            return QuadraticNumber._raw(an, ad, bn, bd, _merge(self.ctx, o.ctx))
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadraticNumber._raw(1, 1, 0, 1, self.ctx)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def conjugate(self):
        return QuadraticNumber._raw(self.an, self.ad, -self.bn, self.bd, self.ctx)

    # -- order -----------------------------------------------------------------

    def sign(self) -> int:
        """Exact sign of the real value; compares a^2 with b^2*d, no floats."""
        sa = (self.an > 0) - (self.an < 0)
        sb = (self.bn > 0) - (self.bn < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        ctx = self.ctx
        lhs = self.an * self.an * self.bd * self.bd * ctx.dd
        rhs = self.bn * self.bn * ctx.dn * self.ad * self.ad
        return sa if lhs > rhs else sb

    def _cmp(self, other):
        o = self._coerce(other)
        if o is None:
            return None
        return (self - o).sign()

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.bn or o.bn:
            _merge(self.ctx, o.ctx)
        return self.an == o.an and self.ad == o.ad and self.bn == o.bn and self.bd == o.bd

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        h = _rat_hash(self.an, self.ad)
        if self.bn == 0:
            return h
        return hash((h, _rat_hash(self.bn, self.bd)))

    def __bool__(self):
        return self.an != 0 or self.bn != 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __float__(self):
        v = self.an / self.ad
        if self.bn:
            v += (self.bn / self.bd) * math.sqrt(self.ctx.dn / self.ctx.dd)
        return v

    # -- text --------------------------------------------------------------------

    def __str__(self):
        return format_qnum(self.rat_part, self.irr_part, self.ctx.d if self.ctx else None)

    def __repr__(self):
        return f"QuadraticNumber({str(self)!r})"

    def __reduce__(self):
        return (QuadraticNumber, (self.rat_part, self.irr_part, self.ctx))
