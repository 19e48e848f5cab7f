"""Figure recipes: which columns of which preset CSV become which curves."""

from __future__ import annotations

from dataclasses import dataclass

# One fixed style per model so legends and colors are stable across figures.
MODEL_STYLES = {
    "rel-first": {"color": "#1f77b4", "linestyle": "-",
                  "label": "relativistic, 1st-quantized"},
    "rel-second": {"color": "#d62728", "linestyle": "-",
                   "label": "relativistic, 2nd-quantized"},
    "semi-rel": {"color": "#2ca02c", "linestyle": "--", "label": "semi-relativistic"},
    "non-rel": {"color": "#9467bd", "linestyle": "-.", "label": "non-relativistic"},
    "classical": {"color": "#7f7f7f", "linestyle": ":", "label": "classical"},
}

_WIDTH_COLORS = ("#08306b", "#2171b5", "#6baed6", "#fd8d3c", "#a63603")

TEMPLATE_MODELS = ("rel-first", "rel-second", "semi-rel", "non-rel", "classical")
MEDIUM_TAGS = ("rel-first_nu0.1", "rel-first_nu1", "rel-second_nu0.1", "rel-second_nu1")
FIG5_WIDTHS = ("0.1", "0.316228", "1", "3.16228", "10")


@dataclass(frozen=True)
class Series:
    column: str
    label: str
    color: str
    linestyle: str = "-"


@dataclass(frozen=True)
class FigureRecipe:
    name: str
    csv_name: str
    x_column: str
    x_label: str
    y_label: str
    series: tuple[Series, ...]
    x_scale: str = "log"
    y_scale: str = "log"
    title: str = ""

    @property
    def required_columns(self) -> list[str]:
        return [self.x_column, *(s.column for s in self.series)]


def _template_recipe(name: str, title: str) -> FigureRecipe:
    series = tuple(
        Series(column=f"T_{m}", label=MODEL_STYLES[m]["label"],
               color=MODEL_STYLES[m]["color"],
               linestyle=MODEL_STYLES[m]["linestyle"])
        for m in TEMPLATE_MODELS)
    return FigureRecipe(name=name, csv_name=f"{name}.csv", x_column="p_over_m",
                        x_label="p / m", y_label="T / m", series=series,
                        title=title)


def _rate_recipe(name: str, title: str) -> FigureRecipe:
    series = tuple(
        Series(column=f"rate_{m}", label=MODEL_STYLES[m]["label"],
               color=MODEL_STYLES[m]["color"],
               linestyle=MODEL_STYLES[m]["linestyle"])
        for m in TEMPLATE_MODELS)
    return FigureRecipe(name=name, csv_name=f"{name}.csv", x_column="E_over_m",
                        x_label="E / m", y_label="rate / (lambda^2 m)",
                        series=series, title=title)


def _medium_rate_recipe(name: str, title: str) -> FigureRecipe:
    labels = {
        "rel-first_nu0.1": "1st-quantized, nu = 0.1",
        "rel-first_nu1": "1st-quantized, vacuum",
        "rel-second_nu0.1": "2nd-quantized, nu = 0.1",
        "rel-second_nu1": "2nd-quantized, vacuum",
    }
    styles = {
        "rel-first_nu0.1": ("#1f77b4", "--"),
        "rel-first_nu1": ("#1f77b4", "-"),
        "rel-second_nu0.1": ("#d62728", "--"),
        "rel-second_nu1": ("#d62728", "-"),
    }
    series = tuple(
        Series(column=f"rate_{tag}", label=labels[tag],
               color=styles[tag][0], linestyle=styles[tag][1])
        for tag in MEDIUM_TAGS)
    return FigureRecipe(name=name, csv_name=f"{name}.csv", x_column="E_over_m",
                        x_label="E / m", y_label="rate / (lambda^2 m)",
                        series=series, title=title)


def _width_family_recipe(name: str, title: str) -> FigureRecipe:
    series = tuple(
        Series(column=f"rate_L{w}", label=f"L / lambda_c = {w}",
               color=_WIDTH_COLORS[i])
        for i, w in enumerate(FIG5_WIDTHS))
    return FigureRecipe(name=name, csv_name=f"{name}.csv", x_column="E_over_m",
                        x_label="E / m", y_label="rate / (lambda^2 m)",
                        series=series, title=title)


RECIPES: dict[str, FigureRecipe] = {
    "fig1a": _template_recipe("fig1a", "Templates, vacuum, E/m = 0.001"),
    "fig1b": _template_recipe("fig1b", "Templates, vacuum, E/m = 10"),
    "fig2a": _template_recipe("fig2a", "Templates, medium nu = 0.1, E/m = 0.001"),
    "fig2b": _template_recipe("fig2b", "Templates, medium nu = 0.9, E/m = 0.001"),
    "fig3a": _medium_rate_recipe("fig3a", "Rates, medium vs vacuum, L/lambda_c = 0.1"),
    "fig3b": _medium_rate_recipe("fig3b", "Rates, medium vs vacuum, L/lambda_c = 10"),
    "fig4a": _rate_recipe("fig4a", "Rates, vacuum, L/lambda_c = 0.1"),
    "fig4b": _rate_recipe("fig4b", "Rates, vacuum, L/lambda_c = 10"),
    "fig5a": _width_family_recipe("fig5a", "1st-quantized rates by packet width"),
    "fig5b": _width_family_recipe("fig5b", "2nd-quantized rates by packet width"),
}
