"""Standard trapezoids t(a), standard parallelograms p(a) and their composition.

A standard figure has unit height, horizontal bases and a 45 degree angle at
the lower-left vertex.  ``t(a)`` has midline ``a`` (bases ``a-1`` on top and
``a+1`` at the bottom); ``p(a)`` has both bases equal to ``a``.

Composition trees record how a figure is assembled from homothetic copies of
prototiles.  Every node caches the figure it produces and knows the frame
(scale, 180 degree flip, translation) of each child inside its own unit-height
coordinate system, so geometric realization never has to redo the algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterator

from .errors import DomainError, KindMismatch
from .field import FieldContext, QuadraticNumber, as_qnum, parse_qnum

TRAPEZOID = "trapezoid"
PARALLELOGRAM = "parallelogram"

INFINITY = float("inf")


# ---------------------------------------------------------------------------
# G, its inverse and h


def G(x):
    """``(x - 1)/(x + 1)``: small-to-large base ratio of t(x)."""
    x = as_qnum(x)
    if x <= 1:
        raise DomainError(f"G is defined for x > 1, got {x}")
    return (x - 1) / (x + 1)


def G_inv(y):
    y = as_qnum(y)
    if y <= 0 or y >= 1:
        raise DomainError(f"G_inv is defined on (0, 1), got {y}")
    return (1 + y) / (1 - y)


def h(x):
    """Ratio p/q for ``G(x) = p + q*sqrt(d)``; ``INFINITY`` when G(x) is rational."""
    g = G(x)
    if g.is_rational():
        return INFINITY
    return g.rat_part / g.irr_part


# ---------------------------------------------------------------------------
# figures


@dataclass(frozen=True)
class StandardFigure:
    kind: str
    param: QuadraticNumber

    def __post_init__(self):
        if self.kind not in (TRAPEZOID, PARALLELOGRAM):
            raise ValueError(f"unknown figure kind {self.kind!r}")
        object.__setattr__(self, "param", as_qnum(self.param))
        if self.kind == TRAPEZOID and self.param <= 1:
            raise DomainError(f"a standard trapezoid needs midline > 1, got {self.param}")
        if self.kind == PARALLELOGRAM and self.param <= 0:
            raise DomainError(f"a standard parallelogram needs base > 0, got {self.param}")

    @property
    def is_trapezoid(self) -> bool:
        return self.kind == TRAPEZOID

    @property
    def bottom(self):
        return self.param + 1 if self.is_trapezoid else self.param

    @property
    def top(self):
        return self.param - 1 if self.is_trapezoid else self.param

    @property
    def area(self):
        return self.param

    def vertices(self):
        """Counter-clockwise unit-height vertices starting at the lower-left (0, 0)."""
        zero = self.param * 0
        one = zero + 1
        return [(zero, zero), (self.bottom, zero), (self.top + 1, one), (one, one)]

    def to_json(self) -> dict:
        return {"kind": self.kind, "param": str(self.param)}

    @classmethod
    def from_json(cls, obj: dict, ctx: FieldContext | None = None) -> "StandardFigure":
        return cls(obj["kind"], parse_qnum(obj["param"], ctx))

    def __str__(self):
        return f"{'t' if self.is_trapezoid else 'p'}({self.param})"


def t(a) -> StandardFigure:
    return StandardFigure(TRAPEZOID, as_qnum(a))


def p(a) -> StandardFigure:
    return StandardFigure(PARALLELOGRAM, as_qnum(a))


# ---------------------------------------------------------------------------
# composition trees


@dataclass(frozen=True)
class Frame:
    """Placement of a child inside its parent: ``point -> scale*(+-point) + (tx, ty)``."""

    child: "Node"
    scale: QuadraticNumber
    flipped: bool
    tx: QuadraticNumber
    ty: QuadraticNumber


class Node:
    """Base class of composition-tree nodes."""

    figure: StandardFigure

    @property
    def children(self) -> tuple["Node", ...]:
        return ()

    def frames(self) -> list[Frame]:
        return []

    @cached_property
    def n_pieces(self) -> int:
        raise NotImplementedError

    def iter_nodes(self) -> Iterator["Node"]:
        """Distinct nodes (shared subtrees visited once), parents before children."""
        seen: set[int] = set()
        stack: list[Node] = [self]
        while stack:
            node = stack.pop()
            if id(node) in seen:
                continue
            seen.add(id(node))
            yield node
            stack.extend(reversed(node.children))

    def leaves(self) -> dict[int, StandardFigure]:
        return {n.index: n.figure for n in self.iter_nodes() if isinstance(n, Leaf)}


@dataclass(frozen=True, eq=False)
class Leaf(Node):
    index: int
    figure: StandardFigure

    @cached_property
    def n_pieces(self) -> int:
        return 1


@dataclass(frozen=True, eq=False)
class Combine(Node):
    case: int
    left: Node
    right: Node
    figure: StandardFigure = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "figure", combined_figure(self.case, self.left.figure, self.right.figure))

    @property
    def children(self):
        return (self.left, self.right)

    @cached_property
    def n_pieces(self) -> int:
        return self.left.n_pieces + self.right.n_pieces

    def frames(self) -> list[Frame]:
        a = self.left.figure.param
        b = self.right.figure.param
        one = a * 0 + 1
        zero = a * 0
        L, R = self.left, self.right
        if self.case in (1, 4):
            return [Frame(L, one, False, zero, zero), Frame(R, one, False, a, zero)]
        if self.case == 2:
            sa = b / (a + b)
            return [Frame(L, sa, False, zero, zero), Frame(R, a / (a + b), False, sa, sa)]
        if self.case == 3:
            # right trapezoid turned upside down, its short base on the ground
            return [Frame(L, one, False, zero, zero), Frame(R, one, True, a + b + 1, one)]
        sa = (b + 1) / (a + b)
        return [Frame(L, sa, False, zero, zero), Frame(R, (a - 1) / (a + b), False, sa, sa)]


@dataclass(frozen=True, eq=False)
class Grid(Node):
    """k columns by n rows of copies of a parallelogram, rescaled to unit height."""

    k: int
    n: int
    child: Node
    figure: StandardFigure = field(init=False)

    def __post_init__(self):
        if self.k < 1 or self.n < 1:
            raise ValueError("grid dimensions must be positive")
        if self.child.figure.is_trapezoid:
            raise KindMismatch("grid needs a parallelogram child")
        object.__setattr__(self, "figure", p(self.child.figure.param * Fraction(self.k, self.n)))

    @property
    def children(self):
        return (self.child,)

    @cached_property
    def n_pieces(self) -> int:
        return self.k * self.n * self.child.n_pieces

    def frames(self) -> list[Frame]:
        a = self.child.figure.param
        s = a * 0 + Fraction(1, self.n)
        out = []
        for j in range(self.n):
            row = s * j
            for i in range(self.k):
                out.append(Frame(self.child, s, False, row + s * a * i, row))
        return out


@dataclass(frozen=True, eq=False)
class Pyramid(Node):
    """``2**levels`` copies of a trapezoid, stacked pairwise ``levels`` times."""

    levels: int
    child: Node
    figure: StandardFigure = field(init=False)

    def __post_init__(self):
        if self.levels < 1:
            raise ValueError("pyramid needs at least one level")
        if not self.child.figure.is_trapezoid:
            raise KindMismatch("pyramid needs a trapezoid child")
        c = self.child.figure.param
        for _ in range(self.levels):
            c = pyramid_step(c)
        object.__setattr__(self, "figure", t(c))

    @property
    def children(self):
        return (self.child,)

    @cached_property
    def n_pieces(self) -> int:
        return (1 << self.levels) * self.child.n_pieces

    @cached_property
    def half(self) -> Node:
        return self.child if self.levels == 1 else Pyramid(self.levels - 1, self.child)

    def frames(self) -> list[Frame]:
        c = self.half.figure.param
        sa = (c + 1) / (2 * c)
        sb = (c - 1) / (2 * c)
        zero = c * 0
        return [Frame(self.half, sa, False, zero, zero), Frame(self.half, sb, False, sa, sa)]


def pyramid_step(c):
    """One stacking level: G_inv(G(c)**2) = (c**2 + 1)/(2c)."""
    return (c * c + 1) / (2 * c)


_CASE_KINDS = {
    1: (PARALLELOGRAM, PARALLELOGRAM),
    2: (PARALLELOGRAM, PARALLELOGRAM),
    3: (TRAPEZOID, TRAPEZOID),
    4: (PARALLELOGRAM, TRAPEZOID),
    5: (TRAPEZOID, TRAPEZOID),
}


def combined_figure(case: int, A: StandardFigure, B: StandardFigure) -> StandardFigure:
    """Figure assembled from copies of A and B by one of the five two-piece joins."""
    try:
        want = _CASE_KINDS[case]
    except KeyError:
        raise ValueError(f"case must be 1..5, got {case}") from None
    if (A.kind, B.kind) != want:
        raise KindMismatch(f"case {case} needs ({want[0]}, {want[1]}), got ({A.kind}, {B.kind})")
    a, b = A.param, B.param
    if case == 1:
        return p(a + b)
    if case == 2:
        return p(a * b / (a + b))
    if case == 3:
        return p(a + b)
    if case == 4:
        return t(a + b)
    return t((a * b + 1) / (a + b))


def leaf(figure: StandardFigure, index: int = 0) -> Leaf:
    return Leaf(index, figure)


def combine(case: int, A: Node, B: Node) -> Combine:
    return Combine(case, A, B)


def grid(k: int, n: int, A: Node) -> Grid:
    return Grid(k, n, A)


def pyramid(levels: int, A: Node) -> Pyramid:
    return Pyramid(levels, A)


def continued_fraction(m: Fraction) -> list[int]:
    terms = []
    while True:
        q = m.numerator // m.denominator
        terms.append(q)
        m -= q
        if m == 0:
            return terms
        m = 1 / m


def scale_parallelogram(A: Node, m) -> Node:
    """Tree for ``p(a*m)`` from copies of ``A = p(a)``, any rational ``m > 0``.

    Side-by-side joins add bases and stacked joins add reciprocals, so the
    continued fraction of ``m`` gives an assembly whose piece count is the sum
    of the partial quotients.  When ``m = k`` or ``m = 1/n`` this is exactly
    ``grid(k, 1, A)`` or ``grid(1, n, A)``.
    """
    m = Fraction(m)
    if m <= 0:
        raise DomainError(f"scale factor must be positive, got {m}")
    if A.figure.is_trapezoid:
        raise KindMismatch("only parallelograms can be rescaled")
    terms = continued_fraction(m)
    # m = [q0; q1, q2, ...]; build from the innermost term outwards.
    # Even depth builds p(a*x) for x >= 1, odd depth builds p(a/x).
    node: Node | None = None
    for depth in range(len(terms) - 1, -1, -1):
        q = terms[depth]
        if depth % 2 == 0:
            block = grid(q, 1, A) if q else None
            if node is None:
                node = block
            elif block is not None:
                node = combine(1, block, node)
        else:
            block = grid(1, q, A)
            node = block if node is None else combine(2, block, node)
    assert node is not None
    return node


# ---------------------------------------------------------------------------
# JSON


def tree_to_json(node: Node) -> dict:
    if isinstance(node, Leaf):
        out = {"node": "leaf", "prototile": node.index, "children": []}
    elif isinstance(node, Combine):
        out = {"node": "combine", "case": node.case, "children": [tree_to_json(node.left), tree_to_json(node.right)]}
    elif isinstance(node, Grid):
        out = {"node": "grid", "k": node.k, "n": node.n, "children": [tree_to_json(node.child)]}
    elif isinstance(node, Pyramid):
        out = {"node": "pyramid", "levels": node.levels, "children": [tree_to_json(node.child)]}
    else:
        raise TypeError(f"unknown node {node!r}")
    out["figure"] = node.figure.to_json()
    return out


def tree_from_json(obj: dict, ctx: FieldContext | None = None) -> Node:
    kind = obj["node"]
    kids = [tree_from_json(c, ctx) for c in obj.get("children", [])]
    if kind == "leaf":
        node: Node = Leaf(int(obj.get("prototile", 0)), StandardFigure.from_json(obj["figure"], ctx))
    elif kind == "combine":
        node = Combine(int(obj["case"]), kids[0], kids[1])
    elif kind == "grid":
        node = Grid(int(obj["k"]), int(obj["n"]), kids[0])
    elif kind == "pyramid":
        node = Pyramid(int(obj["levels"]), kids[0])
    else:
        raise ValueError(f"unknown node kind {kind!r}")
    if "figure" in obj and kind != "leaf":
        stated = StandardFigure.from_json(obj["figure"], ctx)
        if stated != node.figure:
            raise ValueError(f"stored figure {stated} disagrees with recomputed {node.figure}")
    return node
