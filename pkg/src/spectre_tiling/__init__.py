"""Homochiral Spectre tilings by metatile substitution."""

from __future__ import annotations

from .census import census_table, spectral
from .inflation import Patch, generate, inflate, pattern_chirality, tri_map
from .kernels import BACKEND
from .lattice import EdgeParams, Vec4
from .render import RenderOptions, render_svg
from .shape import PlacedMonotile

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "EdgeParams",
    "Patch",
    "PlacedMonotile",
    "RenderOptions",
    "Vec4",
    "census_table",
    "generate",
    "inflate",
    "pattern_chirality",
    "render_svg",
    "spectral",
    "tri_map",
]
