"""Coordinate realization, exact verification, triviality and SVG output."""

from .svg import SvgOptions, to_svg
from .tiling import Placement, Tiling, as_point, placement_vertices, realize
from .trivial import CutTree, find_cut_tree, is_trivial
from .verify import Residue, VerificationReport, line_of, verify_exact

__all__ = [
    "CutTree",
    "Placement",
    "Residue",
    "SvgOptions",
    "Tiling",
    "VerificationReport",
    "as_point",
    "find_cut_tree",
    "is_trivial",
    "line_of",
    "placement_vertices",
    "realize",
    "to_svg",
    "verify_exact",
]
