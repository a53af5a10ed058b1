"""Constructive tilings: the rational case, the quadratic case and their lemmas.

Every constructor returns a composition tree whose leaves are the allowed
prototiles; ``geometry.realize`` turns it into coordinates.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError, PreconditionError
from .field import FieldContext, QuadraticNumber, as_qnum, floor, sqrt_d
from .figures import (
    INFINITY,
    G,
    G_inv,
    Leaf,
    Node,
    Pyramid,
    combine,
    h,
    pyramid_step,
    scale_parallelogram,
    t,
)

HALF = Fraction(1, 2)


def _as_rational(x, name: str) -> Fraction:
    x = as_qnum(x)
    if not x.is_rational():
        raise PreconditionError(f"{name} must be rational, got {x}")
    return x.rat_part


def _need_gt_one(x, name: str):
    if x <= 1:
        raise DomainError(f"{name} must exceed 1, got {x}")


# ---------------------------------------------------------------------------
# rational midlines


def find_small_rational(a, bound) -> tuple[QuadraticNumber, Node]:
    """Smallest pyramid over t(a) whose midline drops below ``bound``.

    ``a`` may be a number (a single-leaf tree is used) or a tree whose figure is
    a trapezoid.  Level 0 means t(a) itself already fits.
    """
    unit = a if isinstance(a, Node) else Leaf(0, t(a))
    bound = as_qnum(bound)
    _need_gt_one(unit.figure.param, "a")
    _need_gt_one(bound, "bound")
    c = unit.figure.param
    levels = 0
    while c >= bound:
        c = pyramid_step(c)
        levels += 1
    return c, (unit if levels == 0 else Pyramid(levels, unit))


def tile_with_rational_unit(unit: Node, b) -> Node:
    """Tile t(b) by copies of ``unit``, a tree for t(a) with rational a.

    t(c) below b comes from a pyramid, p(2a) from two copies of t(a), which is
    rescaled to p(b - c) and set beside t(c).
    """
    a = unit.figure.param
    b = as_qnum(b)
    _need_gt_one(b, "b")
    if b == a:
        return unit
    c, small = find_small_rational(unit, b)
    double = combine(3, unit, unit)
    ratio = ((b - c) / (2 * a)).rat_part
    return combine(4, scale_parallelogram(double, ratio), small)


def tile_rational(a, b) -> Node:
    """Tree over the single prototile t(a) whose figure is t(b); a, b rational."""
    a_q = as_qnum(a)
    b_q = as_qnum(b)
    _need_gt_one(a_q, "a")
    _need_gt_one(b_q, "b")
    _as_rational(a_q, "a")
    _as_rational(b_q, "b")
    return tile_with_rational_unit(Leaf(0, t(a_q)), b_q)


# ---------------------------------------------------------------------------
# the h lemmas


def _context_of(*xs) -> FieldContext:
    for x in xs:
        if isinstance(x, QuadraticNumber) and x.ctx is not None:
            return x.ctx
    raise PreconditionError("a quadratic field context is required")


def lemma_h2_find(q, N, eps, ctx: FieldContext | None = None) -> QuadraticNumber:
    """Some x with h(x) = q, x > N and |conj(x) - q/sqrt(d)| < eps.

    G(x) is taken as r*(q + sqrt(d)) with r a dyadic rational approaching
    1/(q + sqrt(d)) from the side that keeps G(x) below 1.  Each candidate is
    checked exactly; finer dyadics are tried until all constraints hold.
    """
    q = _as_rational(q, "q")
    eps = _as_rational(eps, "eps")
    N = as_qnum(N, ctx)
    ctx = ctx or _context_of(N)
    if N <= 2:
        raise PreconditionError(f"N must exceed 2, got {N}")
    if eps <= 0:
        raise PreconditionError("eps must be positive")
    s = sqrt_d(ctx)
    w = q + s
    u = 1 / w
    q_over_s = q * s / ctx.d
    g_min = G(N)
    from_below = w > 0
    k = 1
    while True:
        scale = 1 << k
        f = floor(u * scale)
        r = Fraction(f if from_below else f + 1, scale)
        k += 1
        if r == 0:
            continue
        g = w * r
        if not (g_min < g < 1):
            continue
        x = G_inv(g)
        if abs(x.conjugate() - q_over_s) < eps:
            return x


def decompose(x, a, b) -> tuple[Fraction, Fraction]:
    """Rational m, n with x = m*a + n*b from the conjugate formulas."""
    x, a, b = as_qnum(x), as_qnum(a), as_qnum(b)
    ac, bc, xc = a.conjugate(), b.conjugate(), x.conjugate()
    m = (x * bc - xc * b) / (a * bc - ac * b)
    n = (x * ac - xc * a) / (b * ac - bc * a)
    if not (m.is_rational() and n.is_rational()):
        raise PreconditionError("decomposition coefficients are not rational")
    return m.rat_part, n.rat_part


def _check_h3(a, b):
    if not (a > 0 and b > 0):
        raise PreconditionError("lemma h3 needs a > 0 and b > 0")
    if not a.conjugate() > 0:
        raise PreconditionError(f"lemma h3 needs conj(a) > 0, got conj(a) = {a.conjugate()}")
    if not b.conjugate() < 0:
        raise PreconditionError(f"lemma h3 needs conj(b) < 0, got conj(b) = {b.conjugate()}")


def lemma_h3_decompose(a, b, q, M) -> tuple[QuadraticNumber, Fraction, Fraction]:
    """x = m*a + n*b with positive rational m, n, h(x) = q and x > M."""
    a, b = as_qnum(a), as_qnum(b)
    ctx = _context_of(a, b)
    _check_h3(a, b)
    q = _as_rational(q, "q")
    M = as_qnum(M, ctx)
    lift = abs(q) * sqrt_d(ctx) / ctx.d + 1
    N = max(M, lift * b / abs(b.conjugate()), lift * a / a.conjugate(), as_qnum(3, ctx))
    x = lemma_h2_find(q, N, Fraction(1), ctx)
    m, n = decompose(x, a, b)
    if not (m > 0 and n > 0):
        raise AssertionError(f"non-positive decomposition m={m}, n={n}")
    return x, m, n


def _h1_join(x_node: Node, m_node: Node, y) -> Node:
    x = x_node.figure.param
    y = as_qnum(y)
    if y == x:
        return x_node
    if not (x > y > 1):
        raise PreconditionError(f"lemma h1 needs x > y > 1, got x={x}, y={y}")
    ratio = G(y) / G(x)
    if not ratio.is_rational():
        raise PreconditionError(f"h({x}) != h({y})")
    r = G_inv(ratio)
    return combine(5, x_node, tile_with_rational_unit(m_node, r))


def lemma_h1_tree(x, m, y) -> Node:
    """Tree over {t(x), t(m)} for t(y) when h(x) = h(y), x > y and m rational."""
    x = as_qnum(x)
    m_q = as_qnum(m)
    _as_rational(m_q, "m")
    if not m_q > 1:
        raise PreconditionError(f"m must exceed 1, got {m_q}")
    if h(x) != h(y):
        raise PreconditionError(f"h({x}) != h({y})")
    return _h1_join(Leaf(0, t(x)), Leaf(1, t(m_q)), y)


# ---------------------------------------------------------------------------
# quadratic midlines


def check_quadratic_pair(a, b):
    a, b = as_qnum(a), as_qnum(b)
    _need_gt_one(a, "a")
    _need_gt_one(b, "b")
    if not a.conjugate() > 0:
        raise PreconditionError(f"conj(a) must be positive, got {a.conjugate()}")
    if not b.conjugate() < 0:
        raise PreconditionError(f"conj(b) must be negative, got {b.conjugate()}")
    return a, b


def tile_quadratic(a, b, c) -> Node:
    """Tree over {t(a), t(b)} (prototiles 0 and 1) whose figure is t(c)."""
    a, b = check_quadratic_pair(a, b)
    ctx = _context_of(a, b)
    c = as_qnum(c, ctx)
    _need_gt_one(c, "c")
    A, B = Leaf(0, t(a)), Leaf(1, t(b))
    if c == a:
        return A
    if c == b:
        return B
    double_a = combine(3, A, A)
    double_b = combine(3, B, B)

    def assemble(q, M) -> Node:
        # t(x) for x = 2a*m + 2b*n = a + (2a(m - 1/2) + 2b*n), or the same with b
        _, m, n = lemma_h3_decompose(2 * a, 2 * b, q, M)
        if m > HALF:
            para = combine(1, scale_parallelogram(double_a, m - HALF), scale_parallelogram(double_b, n))
            return combine(4, para, A)
        para = combine(1, scale_parallelogram(double_a, m), scale_parallelogram(double_b, n - HALF))
        return combine(4, para, B)

    x_node = assemble(0, a + b)
    rational_node = combine(5, x_node, x_node)
    assert rational_node.figure.param.is_rational()
    if c.is_rational():
        return tile_with_rational_unit(rational_node, c)
    x2_node = assemble(h(c), a + b + c)
    return _h1_join(x2_node, rational_node, c)


def proposition_last_sequence(a, count: int) -> list[tuple[QuadraticNumber, Node]]:
    """b_1 = a, b_{i+1} = G_inv(G(a) G(b_i)), each with its stacking tree over t(a)."""
    a = as_qnum(a)
    if not (1 < a.conjugate() < a):
        raise PreconditionError(f"need 1 < conj(a) < a, got a = {a}")
    if count < 1:
        raise ValueError("count must be positive")
    A = Leaf(0, t(a))
    out = [(a, A)]
    node: Node = A
    for _ in range(count - 1):
        node = combine(5, A, node)
        out.append((node.figure.param, node))
    return out


__all__ = [
    "INFINITY",
    "decompose",
    "find_small_rational",
    "lemma_h1_tree",
    "lemma_h2_find",
    "lemma_h3_decompose",
    "proposition_last_sequence",
    "tile_quadratic",
    "tile_rational",
    "tile_with_rational_unit",
]
