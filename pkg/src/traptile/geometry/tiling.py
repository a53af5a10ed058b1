from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction

from ..errors import MixedContext
from ..field import FieldContext, QuadraticNumber, as_qnum, format_rational, parse_qnum
from ..figures import Frame, Leaf, Node, StandardFigure

Point = tuple  # (x, y) of QuadraticNumber


@dataclass(frozen=True)
class Placement:
    """A homothetic copy of a prototile.

    ``anchor`` is the lower-left vertex of the placed piece.  ``flipped`` marks
    a 180 degree turn (homothety with negative ratio); it only changes the
    shape of trapezoids, parallelograms are centrally symmetric.
    """

    prototile: int
    scale: QuadraticNumber
    anchor: Point
    flipped: bool = False


@dataclass
class Tiling:
    ctx: FieldContext | None
    prototiles: list[StandardFigure]
    target: StandardFigure
    placements: list[Placement] = field(default_factory=list)

    def piece_vertices(self, i: int) -> list[Point]:
        pl = self.placements[i]
        return placement_vertices(self.prototiles[pl.prototile], pl)

    def iter_vertices(self):
        for pl in self.placements:
            yield placement_vertices(self.prototiles[pl.prototile], pl)

    def piece_figure(self, i: int) -> StandardFigure:
        return self.prototiles[self.placements[i].prototile]

    def total_area(self):
        total = self.target.param * 0
        for pl in self.placements:
            total = total + pl.scale * pl.scale * self.prototiles[pl.prototile].area
        return total

    def without(self, i: int) -> "Tiling":
        return replace(self, placements=self.placements[:i] + self.placements[i + 1:])

    # -- JSON --------------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "d": format_rational(self.ctx.d) if self.ctx is not None else None,
            "prototiles": [f.to_json() for f in self.prototiles],
            "target": self.target.to_json(),
            "placements": [
                {
                    "prototile": pl.prototile,
                    "scale": str(pl.scale),
                    "anchor": [str(pl.anchor[0]), str(pl.anchor[1])],
                    "flipped": bool(pl.flipped),
                }
                for pl in self.placements
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)

    @classmethod
    def from_json(cls, obj: dict) -> "Tiling":
        d = obj.get("d")
        ctx = FieldContext(Fraction(d)) if d not in (None, "") else None
        protos = [StandardFigure.from_json(f, ctx) for f in obj["prototiles"]]
        target = StandardFigure.from_json(obj["target"], ctx)
        placements = []
        for item in obj["placements"]:
            placements.append(
                Placement(
                    int(item["prototile"]),
                    parse_qnum(item["scale"], ctx),
                    (parse_qnum(item["anchor"][0], ctx), parse_qnum(item["anchor"][1], ctx)),
                    bool(item.get("flipped", False)),
                )
            )
        return cls(ctx, protos, target, placements)

    @classmethod
    def loads(cls, text: str) -> "Tiling":
        return cls.from_json(json.loads(text))


def placement_vertices(fig: StandardFigure, pl: Placement) -> list[Point]:
    """Counter-clockwise vertices, lower-left first."""
    s = pl.scale
    x0, y0 = pl.anchor
    y1 = y0 + s
    if pl.flipped and fig.is_trapezoid:
        a = fig.param
        return [(x0, y0), (x0 + s * (a - 1), y0), (x0 + s * a, y1), (x0 - s, y1)]
    return [(x0, y0), (x0 + s * fig.bottom, y0), (x0 + s * (fig.top + 1), y1), (x0 + s, y1)]


def _tree_context(tree: Node) -> FieldContext | None:
    ctx = None
    for node in tree.iter_nodes():
        c = node.figure.param.ctx
        if c is None:
            continue
        if ctx is None:
            ctx = c
        elif ctx != c:
            raise MixedContext("tree mixes quadratic fields")
    return ctx


def realize(tree: Node) -> Tiling:
    """Coordinates for every leaf of a composition tree.

    The target is the tree's figure with its lower-left vertex at the origin.
    Children are placed through the frames each node reports; a frame maps
    a child point ``q`` to ``scale * (+-q) + (tx, ty)``.
    """
    leaves = tree.leaves()
    n_protos = max(leaves) + 1
    missing = [i for i in range(n_protos) if i not in leaves]
    if missing:
        raise ValueError(f"prototile indices {missing} never used")
    protos = [leaves[i] for i in range(n_protos)]
    ctx = _tree_context(tree)

    one = tree.figure.param * 0 + 1
    zero = one - 1
    placements: list[Placement] = []
    frame_cache: dict[int, list[Frame]] = {}
    stack = [(tree, one, 1, zero, zero)]
    while stack:
        node, s, sigma, tx, ty = stack.pop()
        if isinstance(node, Leaf):
            fig = node.figure
            if sigma > 0:
                anchor = (tx, ty)
                flipped = False
            else:
                # lower-left of the turned piece is the image of the upper-right corner
                anchor = (tx - s * (fig.top + 1), ty - s)
                flipped = fig.is_trapezoid
            placements.append(Placement(node.index, s, anchor, flipped))
            continue
        frames = frame_cache.get(id(node))
        if frames is None:
            frames = frame_cache[id(node)] = node.frames()
        ss = s if sigma > 0 else -s
        for fr in reversed(frames):
            stack.append(
                (
                    fr.child,
                    s * fr.scale,
                    -sigma if fr.flipped else sigma,
                    ss * fr.tx + tx,
                    ss * fr.ty + ty,
                )
            )
    return Tiling(ctx, protos, tree.figure, placements)


def as_point(x, y, ctx=None) -> Point:
    return (as_qnum(x, ctx), as_qnum(y, ctx))
