"""Recognition of trivial (guillotine) tilings.

A tiling is trivial when it is a single piece, or a straight line running only
along piece boundaries splits it into two trivially tiled parts.  Regions stay
convex under such splits, so a line is a valid cut exactly when no piece
crosses it and pieces lie on both sides.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import PreconditionError
from .tiling import Tiling
from .verify import DIRECTIONS, HORIZONTAL, RISING, verify_exact


def _offset(direction, v):
    x, y = v
    if direction == HORIZONTAL:
        return y
    if direction == RISING:
        return y - x
    return y + x


@dataclass
class CutTree:
    """Witness of triviality: either a single piece or a cut with two sides."""

    piece: int | None = None
    direction: str | None = None
    offset: object = None
    below: "CutTree | None" = None
    above: "CutTree | None" = None

    def to_json(self) -> dict:
        if self.piece is not None:
            return {"piece": self.piece}
        return {
            "cut": self.direction,
            "offset": str(self.offset),
            "below": self.below.to_json(),
            "above": self.above.to_json(),
        }

    def depth(self) -> int:
        if self.piece is not None:
            return 0
        return 1 + max(self.below.depth(), self.above.depth())


def _find_cut(pieces, spans):
    """First splitting line: horizontal, then +45, then -45, lowest offset first."""
    for direction in DIRECTIONS:
        span = spans[direction]
        order = sorted(pieces, key=lambda i: float(span[i][0]))
        order.sort(key=lambda i: span[i][0])
        reach = None
        for pos in range(len(order) - 1):
            hi = span[order[pos]][1]
            if reach is None or hi > reach:
                reach = hi
            if reach <= span[order[pos + 1]][0]:
                return direction, reach, order[: pos + 1], order[pos + 1:]
    return None


def find_cut_tree(tiling: Tiling) -> CutTree | None:
    """Exhaustive cut search; ``None`` when some region admits no full cut."""
    spans = {d: [] for d in DIRECTIONS}
    for verts in tiling.iter_vertices():
        for d in DIRECTIONS:
            offs = [_offset(d, v) for v in verts]
            spans[d].append((min(offs), max(offs)))

    root = CutTree()
    work = [(list(range(len(tiling.placements))), root)]
    while work:
        pieces, node = work.pop()
        if len(pieces) == 1:
            node.piece = pieces[0]
            continue
        found = _find_cut(pieces, spans)
        if found is None:
            return None
        direction, offset, lower, upper = found
        node.direction, node.offset = direction, offset
        node.below, node.above = CutTree(), CutTree()
        work.append((upper, node.above))
        work.append((lower, node.below))
    return root


def is_trivial(tiling: Tiling, check: bool = True) -> tuple[bool, CutTree | None]:
    if check and not verify_exact(tiling).ok:
        raise PreconditionError("is_trivial needs a tiling that passes verify_exact")
    tree = find_cut_tree(tiling)
    return tree is not None, tree

