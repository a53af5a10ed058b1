# cython: language_level=3, boundscheck=False, wraparound=False, c_api_binop_methods=True
"""Compiled backend for exact arithmetic in Q[sqrt(d)].

Same representation and semantics as ``_pure``.  Rational helpers run on C
integers when every operand fits in 31 bits and fall back to Python ints
otherwise, so results never overflow.
"""

import math
import sys
from fractions import Fraction

from cpython.long cimport PyLong_AsLongLongAndOverflow

from ..errors import DivisionByZero, DomainError, MixedContext
from ._context import FieldContext
from ._text import format_qnum

cdef object _HASH_MOD = sys.hash_info.modulus
cdef object _HASH_INF = sys.hash_info.inf
cdef object _gcd = math.gcd
cdef long long _LIMIT = 1LL << 31


cdef inline bint _fits(object x, long long *out):
    cdef int overflow = 0
    cdef long long v = PyLong_AsLongLongAndOverflow(x, &overflow)
    if overflow or v >= _LIMIT or v <= -_LIMIT:
        return False
    out[0] = v
    return True


cdef inline long long _cgcd(long long a, long long b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


def _rat_hash(n, d):
    try:
        dinv = pow(d, -1, _HASH_MOD)
    except ValueError:
        h = _HASH_INF
    else:
        h = hash(hash(abs(n)) * dinv)
    h = h if n >= 0 else -h
    return -2 if h == -1 else h


cdef tuple _radd(object an, object ad, object cn, object cd):
    cdef long long a, b, c, d, g, s, t, g2
    if _fits(an, &a) and _fits(ad, &b) and _fits(cn, &c) and _fits(cd, &d):
        g = _cgcd(b, d)
        if g == 1:
            return a * d + c * b, b * d
        s = b // g
        t = a * (d // g) + c * s
        g2 = _cgcd(t, g)
        if g2 == 1:
            return t, s * d
        return t // g2, s * (d // g2)
    gg = _gcd(ad, cd)
    if gg == 1:
        return an * cd + cn * ad, ad * cd
    ss = ad // gg
    tt = an * (cd // gg) + cn * ss
    gg2 = _gcd(tt, gg)
    if gg2 == 1:
        return tt, ss * cd
    return tt // gg2, ss * (cd // gg2)


cdef tuple _rmul(object an, object ad, object cn, object cd):
    cdef long long a, b, c, d, g1, g2
    if _fits(an, &a) and _fits(ad, &b) and _fits(cn, &c) and _fits(cd, &d):
        g1 = _cgcd(a, d)
        g2 = _cgcd(c, b)
        if g1 > 1:
            a //= g1
            d //= g1
        if g2 > 1:
            c //= g2
            b //= g2
        return a * c, b * d
    h1 = _gcd(an, cd)
    h2 = _gcd(cn, ad)
    if h1 > 1:
        an //= h1
        cd //= h1
    if h2 > 1:
        cn //= h2
        ad //= h2
    return an * cn, ad * cd


cdef inline object _merge(object c1, object c2):
    if c1 is c2 or c2 is None:
        return c1
    if c1 is None:
        return c2
    if c1 == c2:
        return c1
    raise MixedContext(f"cannot combine Q[sqrt({c1.d})] with Q[sqrt({c2.d})]")


cdef inline QuadraticNumber _make(object an, object ad, object bn, object bd, object ctx):
    cdef QuadraticNumber x = QuadraticNumber.__new__(QuadraticNumber)
    x.an = an
    x.ad = ad
    x.bn = bn
    x.bd = bd
    x.ctx = ctx
    return x


cdef QuadraticNumber _coerce(object other):
    if isinstance(other, QuadraticNumber):
        return <QuadraticNumber>other
    if isinstance(other, int):
        return _make(other, 1, 0, 1, None)
    if isinstance(other, Fraction):
        return _make(other.numerator, other.denominator, 0, 1, None)
    return None


cdef QuadraticNumber _add(QuadraticNumber x, QuadraticNumber o):
    ctx = _merge(x.ctx, o.ctx)
    an, ad = _radd(x.an, x.ad, o.an, o.ad)
    if o.bn == 0:
        bn, bd = x.bn, x.bd
    elif x.bn == 0:
        bn, bd = o.bn, o.bd
    else:
        bn, bd = _radd(x.bn, x.bd, o.bn, o.bd)
    return _make(an, ad, bn, bd, ctx)


cdef QuadraticNumber _neg(QuadraticNumber x):
    return _make(-x.an, x.ad, -x.bn, x.bd, x.ctx)


cdef QuadraticNumber _mul(QuadraticNumber x, QuadraticNumber o):
    ctx = _merge(x.ctx, o.ctx)
    if o.bn == 0:
        an, ad = _rmul(x.an, x.ad, o.an, o.ad)
        bn, bd = _rmul(x.bn, x.bd, o.an, o.ad)
        return _make(an, ad, bn, bd, ctx)
    if x.bn == 0:
        an, ad = _rmul(x.an, x.ad, o.an, o.ad)
        bn, bd = _rmul(x.an, x.ad, o.bn, o.bd)
        return _make(an, ad, bn, bd, ctx)
    pn, pd = _rmul(x.an, x.ad, o.an, o.ad)
    qn, qd = _rmul(x.bn, x.bd, o.bn, o.bd)
    qn, qd = _rmul(qn, qd, ctx.dn, ctx.dd)
    an, ad = _radd(pn, pd, qn, qd)
    un, ud = _rmul(x.an, x.ad, o.bn, o.bd)
    vn, vd = _rmul(x.bn, x.bd, o.an, o.ad)
    bn, bd = _radd(un, ud, vn, vd)
    return _make(an, ad, bn, bd, ctx)


cdef QuadraticNumber _inverse(QuadraticNumber x):
    if x.bn == 0:
        if x.an == 0:
            raise DivisionByZero("inverse of zero")
        if x.an < 0:
            return _make(-x.ad, -x.an, 0, 1, x.ctx)
        return _make(x.ad, x.an, 0, 1, x.ctx)
    ctx = x.ctx
    sn, sd = _rmul(x.an, x.ad, x.an, x.ad)
    tn, td = _rmul(x.bn, x.bd, x.bn, x.bd)
    tn, td = _rmul(tn, td, ctx.dn, ctx.dd)
    nn, nd = _radd(sn, sd, -tn, td)
    if nn < 0:
        nn, nd = -nd, -nn
    else:
        nn, nd = nd, nn
    an, ad = _rmul(x.an, x.ad, nn, nd)
    bn, bd = _rmul(-x.bn, x.bd, nn, nd)
    return _make(an, ad, bn, bd, ctx)


cdef int _sign(QuadraticNumber x):
    cdef int sa = (x.an > 0) - (x.an < 0)
    cdef int sb = (x.bn > 0) - (x.bn < 0)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    ctx = x.ctx
    lhs = x.an * x.an * x.bd * x.bd * ctx.dd
    rhs = x.bn * x.bn * ctx.dn * x.ad * x.ad
    return sa if lhs > rhs else sb


cdef class QuadraticNumber:
    """Exact element ``a + b*sqrt(d)`` of Q[sqrt(d)]; Q is the ``b == 0`` case.

    ``ctx`` may be ``None`` for purely rational values, which then combine
    with numbers of any context.
    """

    cdef readonly object an, ad, bn, bd, ctx

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
        return _make(an, ad, bn, bd, ctx)

    @property
    def rat_part(self):
        return Fraction(self.an, self.ad)

    @property
    def irr_part(self):
        return Fraction(self.bn, self.bd)

    @property
    def parts(self):
        return (self.an, self.ad, self.bn, self.bd)

    def is_rational(self):
        return self.bn == 0

    # Cython passes operands in either order to arithmetic special methods.

    def __add__(x, y):
        a = _coerce(x)
        b = _coerce(y)
        if a is None or b is None:
            return NotImplemented
        return _add(a, b)

    def __sub__(x, y):
        a = _coerce(x)
        b = _coerce(y)
        if a is None or b is None:
            return NotImplemented
        return _add(a, _neg(b))

    def __mul__(x, y):
        a = _coerce(x)
        b = _coerce(y)
        if a is None or b is None:
            return NotImplemented
        return _mul(a, b)

    def __truediv__(x, y):
        a = _coerce(x)
        o = _coerce(y)
        if a is None or o is None:
            return NotImplemented
        if o.an == 0 and o.bn == 0:
            raise DivisionByZero("division by zero")
        if o.bn == 0:
            if o.an > 0:
                rn, rd = o.ad, o.an
            else:
                rn, rd = -o.ad, -o.an
            an, ad = _rmul(a.an, a.ad, rn, rd)
            bn, bd = _rmul(a.bn, a.bd, rn, rd)
            return _make(an, ad, bn, bd, _merge(a.ctx, o.ctx))
        return _mul(a, _inverse(o))

    def __neg__(self):
        return _neg(self)

    def __pos__(self):
        return self

    def inverse(self):
        """``1/x`` rationalised by the conjugate: ``conj(x) / (x*conj(x))``."""
        return _inverse(self)

    def __pow__(x, n, mod):
        cdef QuadraticNumber base, result
        if not isinstance(x, QuadraticNumber) or not isinstance(n, int) or mod is not None:
            return NotImplemented
        base = <QuadraticNumber>x
        if n < 0:
            base = _inverse(base)
            n = -n
        result = _make(1, 1, 0, 1, base.ctx)
        while n:
            if n & 1:
                result = _mul(result, base)
            n >>= 1
            if n:
                base = _mul(base, base)
        return result

    def conjugate(self):
        return _make(self.an, self.ad, -self.bn, self.bd, self.ctx)

    def sign(self):
        """Exact sign of the real value; compares a^2 with b^2*d, no floats."""
        return _sign(self)

    def __richcmp__(x, y, int op):
        cdef int c
        a = _coerce(x)
        b = _coerce(y)
        if a is None or b is None:
            return NotImplemented
        if op == 2 or op == 3:
            if a.bn or b.bn:
                _merge(a.ctx, b.ctx)
            eq = a.an == b.an and a.ad == b.ad and a.bn == b.bn and a.bd == b.bd
            return eq if op == 2 else not eq
        c = _sign(_add(a, _neg(b)))
        if op == 0:
            return c < 0
        if op == 1:
            return c <= 0
        if op == 4:
            return c > 0
        return c >= 0

    def __hash__(self):
        h = _rat_hash(self.an, self.ad)
        if self.bn == 0:
            return h
        return hash((h, _rat_hash(self.bn, self.bd)))

    def __bool__(self):
        return self.an != 0 or self.bn != 0

    def __abs__(self):
        return _neg(self) if _sign(self) < 0 else self

    def __float__(self):
        v = self.an / self.ad
        if self.bn:
            v += (self.bn / self.bd) * math.sqrt(self.ctx.dn / self.ctx.dd)
        return v

    def __str__(self):
        return format_qnum(self.rat_part, self.irr_part, self.ctx.d if self.ctx else None)

    def __repr__(self):
        return f"QuadraticNumber({str(self)!r})"

    def __reduce__(self):
        return (QuadraticNumber, (self.rat_part, self.irr_part, self.ctx))
