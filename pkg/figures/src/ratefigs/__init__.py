"""Batch renderer for the toolkit's CSV tables."""

from .cli import KNOWN_FILES, render_directory, specs_for_directory
from .render import (
    AllocationTable,
    CurveTable,
    FigureSpec,
    build_figure,
    read_allocation,
    read_curves,
    render,
)

__all__ = [
    "AllocationTable",
    "CurveTable",
    "FigureSpec",
    "KNOWN_FILES",
    "build_figure",
    "read_allocation",
    "read_curves",
    "render",
    "render_directory",
    "specs_for_directory",
]

__version__ = "0.1.0"
