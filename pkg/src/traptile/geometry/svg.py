"""SVG rendering of tilings.  Floats appear here and nowhere upstream."""

from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

from .tiling import Tiling


@dataclass
class SvgOptions:
    width: float = 800.0
    margin: float = 20.0
    digits: int = 4
    stroke_width: float = 0.8
    fill_prototiles: tuple[str, ...] = ("#9ecae1", "#fdae6b", "#a1d99b", "#bcbddc", "#fc9272")
    title: str | None = None


def to_svg(tiling: Tiling, options: SvgOptions | None = None) -> str:
    opt = options or SvgOptions()
    target = [(float(x), float(y)) for x, y in tiling.target.vertices()]
    xs = [p[0] for p in target]
    span_x = max(xs) - min(xs)
    scale = (opt.width - 2 * opt.margin) / span_x
    height = scale * 1.0 + 2 * opt.margin
    x_min = min(xs)

    def fmt(v: float) -> str:
        return f"{v:.{opt.digits}f}".rstrip("0").rstrip(".")

    def pt(x: float, y: float) -> str:
        # y axis points down in SVG
        return f"{fmt(opt.margin + (x - x_min) * scale)},{fmt(height - opt.margin - y * scale)}"

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{fmt(opt.width)}" '
        f'height="{fmt(height)}" viewBox="0 0 {fmt(opt.width)} {fmt(height)}">',
    ]
    if opt.title:
        out.append(f"<title>{escape(opt.title)}</title>")
    out.append('<g id="pieces">')
    for pl, verts in zip(tiling.placements, tiling.iter_vertices()):
        color = opt.fill_prototiles[pl.prototile % len(opt.fill_prototiles)]
        points = " ".join(pt(float(x), float(y)) for x, y in verts)
        out.append(
            f'<polygon points="{points}" fill="{color}" stroke="#333" '
            f'stroke-width="{fmt(opt.stroke_width)}"/>'
        )
    out.append("</g>")
    outline = " ".join(pt(x, y) for x, y in target)
    out.append(
        f'<polygon id="target" points="{outline}" fill="none" stroke="#000" '
        f'stroke-width="{fmt(2 * opt.stroke_width)}"/>'
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"
