"""Render figure recipes from CSV sweep data to image files.

Rendering is a pure function of (CSV, recipe): fixed figure geometry, fixed
styles, no timestamps, so re-rendering the same inputs is byte-identical on
a given platform.  The sha256 of the sidecar manifest is embedded in the
image metadata for provenance.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .io import MissingColumnsError, SweepData, load_sweep
from .recipes import RECIPES, FigureRecipe

_RC = {
    "figure.figsize": (6.0, 4.2),
    "figure.dpi": 120,
    "savefig.dpi": 120,
    "font.size": 10,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "legend.fontsize": 8,
    "svg.hashsalt": "udwplots",
}


def build_figure(recipe: FigureRecipe, data: SweepData):
    """Assemble the matplotlib Figure for a recipe; one curve per series."""
    missing = [c for c in recipe.required_columns if c not in data.columns]
    if missing:
        raise MissingColumnsError(data.path, missing)
    with matplotlib.rc_context(_RC):
        fig, ax = plt.subplots()
        x = data.column(recipe.x_column)
        for series in recipe.series:
            ax.plot(x, data.column(series.column), label=series.label,
                    color=series.color, linestyle=series.linestyle, linewidth=1.4)
        ax.set_xscale(recipe.x_scale)
        ax.set_yscale(recipe.y_scale)
        ax.set_xlabel(recipe.x_label)
        ax.set_ylabel(recipe.y_label)
        if recipe.title:
            ax.set_title(recipe.title)
        ax.legend(loc="best", frameon=False)
        fig.tight_layout()
    return fig


def render(recipe: FigureRecipe, data_dir: str | Path, out_path: str | Path) -> Path:
    """Read the recipe's CSV (+manifest) from data_dir and write the image."""
    data = load_sweep(Path(data_dir) / recipe.csv_name)
    out = Path(out_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    fig = build_figure(recipe, data)
    metadata = {"Description": f"manifest-sha256={data.manifest_sha256}"}
    if out.suffix.lower() == ".svg":
        metadata["Date"] = None  # strip the timestamp SVG would embed
    try:
        # hashsalt and dpi must be active at save time for stable output
        with matplotlib.rc_context(_RC):
            fig.savefig(out, metadata=metadata)
    finally:
        plt.close(fig)
    return out


def render_preset(name: str, data_dir: str | Path, out_path: str | Path) -> Path:
    if name not in RECIPES:
        raise KeyError(f"unknown figure preset {name!r}; "
                       f"choose from {', '.join(sorted(RECIPES))}")
    return render(RECIPES[name], data_dir, out_path)
