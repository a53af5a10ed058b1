"""Hand-built tilings shared by several test modules."""

from __future__ import annotations

from fractions import Fraction

from traptile.field import QuadraticNumber
from traptile.figures import p, t
from traptile.geometry import Placement, Tiling

Q = QuadraticNumber
HALF, QUARTER = Fraction(1, 2), Fraction(1, 4)


def six_piece_tiling() -> Tiling:
    """t(3) cut by horizontal segments at heights 1/2 and 1/4.

    Upper strip: p(2) and t(3) at scale 1/2.  Lower strip: p(2) at scale 1/2,
    a column of two p(4) at scale 1/4, and t(3) at scale 1/2.  The two
    quarter-height pieces share a base, giving four cuts in total.
    """
    protos = [t(3), p(2), p(4)]

    def place(proto, scale, x, y):
        return Placement(proto, Q(scale), (Q(x), Q(y)))

    placements = [
        place(1, HALF, HALF, HALF),
        place(0, HALF, Fraction(3, 2), HALF),
        place(1, HALF, 0, 0),
        place(2, QUARTER, 1, 0),
        place(2, QUARTER, Fraction(5, 4), QUARTER),
        place(0, HALF, 2, 0),
    ]
    return Tiling(None, protos, t(3), placements)
