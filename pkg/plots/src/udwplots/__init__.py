"""Figure rendering for udwkit sweep output (reads CSV + manifest only)."""

from .io import MissingColumnsError, SweepData, load_sweep
from .recipes import RECIPES, FigureRecipe, Series
from .render import build_figure, render, render_preset

__version__ = "0.1.0"

__all__ = [
    "FigureRecipe",
    "MissingColumnsError",
    "RECIPES",
    "Series",
    "SweepData",
    "build_figure",
    "load_sweep",
    "render",
    "render_preset",
]
