"""Command-line interface: sweeps, figure-ready data files, comparisons.

Subcommands
-----------
template   sweep template functions over a momentum grid
rate       sweep emission rates over E/m or L/lambda_c
compare    fractional rate difference between two models
overlap    position-state overlap kernel versus its Fourier oracle
figure     emit the parameter sets of the named figure preset

Every emitted data file is deterministic (17 significant digits, '\n' line
endings, '#'-prefixed parameter echo) and carries a sidecar JSON manifest
that suffices to re-run it.  Exit codes: 0 success, 1 usage error, 2
domain/validation error, 3 numerical non-convergence.  Sweep rows are
evaluated concurrently up to UDW_THREADS; output order never depends on the
thread count.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import subprocess
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .localization import OverlapQuery, overlap_fourier_oracle, overlap_kernel
from .params import (
    COMPARABLE_MODELS,
    DetectorParams,
    Medium,
    TemplateModel,
    validate,
)
from .rates import (
    RELATIVISTIC_PAIR,
    RateConvergenceError,
    rate_analytic_vacuum,
    rate_quadrature,
)
from .specfun import DomainError
from .states import GaussianState
from .templates import TemplateQuery, template

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_NONCONVERGED = 3

_FIG_P_GRID = ("p", 1e-3, 10.0, 500, "log")
_FIG_E_GRID = ("E_over_m", 1e-3, 10.0, 48, "log")
_FIG5_WIDTHS = (0.1, 0.31622776601683794, 1.0, 3.1622776601683795, 10.0)

# Grid axis ranges below are repo conventions chosen to cover the plotted
# regimes; they are inputs to the presets, not quoted values.
FIGURE_PRESETS = {
    "fig1a": {"kind": "template", "models": "all", "E_over_m": 1e-3, "nu": 1.0, "grid": _FIG_P_GRID},
    "fig1b": {"kind": "template", "models": "all", "E_over_m": 10.0, "nu": 1.0, "grid": _FIG_P_GRID},
    "fig2a": {"kind": "template", "models": "all", "E_over_m": 1e-3, "nu": 0.1, "grid": _FIG_P_GRID},
    "fig2b": {"kind": "template", "models": "all", "E_over_m": 1e-3, "nu": 0.9, "grid": _FIG_P_GRID},
    "fig3a": {"kind": "rate-medium", "L": 0.1, "nus": (0.1, 1.0), "grid": _FIG_E_GRID},
    "fig3b": {"kind": "rate-medium", "L": 10.0, "nus": (0.1, 1.0), "grid": _FIG_E_GRID},
    "fig4a": {"kind": "rate", "models": "all", "L": 0.1, "nu": 1.0, "grid": _FIG_E_GRID},
    "fig4b": {"kind": "rate", "models": "all", "L": 10.0, "nu": 1.0, "grid": _FIG_E_GRID},
    "fig5a": {"kind": "rate-widths", "model": "rel-first", "widths": _FIG5_WIDTHS, "grid": _FIG_E_GRID},
    "fig5b": {"kind": "rate-widths", "model": "rel-second", "widths": _FIG5_WIDTHS, "grid": _FIG_E_GRID},
}

# Bohr radius over the Compton wavelength of the hydrogen atom's total mass;
# the gap is the 1s-2p transition over the same mass scale.
HYDROGEN_L_ME = 2.5e5
HYDROGEN_E_OVER_M = 1.1e-8


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits with code 2
        raise UsageError(message)


@dataclass(frozen=True)
class GridSpec:
    var: str
    lo: float
    hi: float
    count: int
    spacing: str

    def values(self) -> np.ndarray:
        if self.count == 1:
            return np.array([self.lo])
        if self.spacing == "log":
            return np.geomspace(self.lo, self.hi, self.count)
        return np.linspace(self.lo, self.hi, self.count)


def parse_grid(text: str, allowed_vars: tuple[str, ...]) -> GridSpec:
    parts = text.split(":")
    if len(parts) != 5:
        raise UsageError(f"--grid expects var:min:max:count:spacing, got {text!r}")
    var, lo_s, hi_s, count_s, spacing = parts
    if var not in allowed_vars:
        raise UsageError(f"grid variable {var!r} not in {allowed_vars}")
    try:
        lo, hi, count = float(lo_s), float(hi_s), int(count_s)
    except ValueError as exc:
        raise UsageError(f"bad grid numbers in {text!r}: {exc}") from exc
    if spacing not in ("linear", "log"):
        raise UsageError(f"spacing must be linear or log, got {spacing!r}")
    if count < 1:
        raise UsageError(f"grid count must be >= 1, got {count}")
    if count > 1 and not lo < hi:
        raise UsageError(f"grid needs min < max for count > 1, got {lo} >= {hi}")
    if spacing == "log" and lo <= 0.0:
        raise UsageError(f"log spacing requires min > 0, got {lo}")
    return GridSpec(var, lo, hi, count, spacing)


def parse_models(text: str) -> list[TemplateModel]:
    if text.strip().lower() == "all":
        return list(COMPARABLE_MODELS)
    try:
        return [TemplateModel.from_name(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _thread_count() -> int:
    raw = os.environ.get("UDW_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _map_rows(fn, items):
    n = _thread_count()
    if n > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=n) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


def _fmt(value: float) -> str:
    if isinstance(value, float) and math.isnan(value):
        return "nan"
    return f"{value:.17g}"


def _build_id() -> str:
    try:
        out = subprocess.run(
            ["git", "describe", "--always", "--dirty"],
            capture_output=True, text=True, timeout=5,
            cwd=Path(__file__).resolve().parent,
        )
        if out.returncode == 0 and out.stdout.strip():
            return out.stdout.strip()
    except Exception:
        pass
    return f"udwkit-{__version__}"


def write_table(path: Path, comments: dict, columns: list[str],
                rows: list[list[float]], fmt: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    if fmt == "csv":
        lines = [f"# {key} = {value}" for key, value in comments.items()]
        lines.append(",".join(columns))
        lines.extend(",".join(_fmt(v) for v in row) for row in rows)
        path.write_text("\n".join(lines) + "\n")
    else:
        payload = {"comments": comments, "columns": columns, "rows": rows}
        path.write_text(json.dumps(payload, indent=2, allow_nan=True) + "\n")


def write_manifest(path: Path, manifest: dict) -> None:
    side = path.with_suffix(".manifest.json")
    side.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def _manifest(subcommand: str, parameters: dict, columns: list[str],
              out: Path, rel_tol: float | None = None) -> dict:
    doc = {
        "subcommand": subcommand,
        "parameters": parameters,
        "columns": columns,
        "output": out.name,
        "build": _build_id(),
        "format_digits": 17,
    }
    if rel_tol is not None:
        doc["rel_tol"] = rel_tol
    return doc


def _check_params(params: DetectorParams, medium: Medium) -> None:
    report = validate(params, medium)
    if not report.ok:
        raise DomainError("; ".join(report.violations))


# --- subcommands --------------------------------------------------------------

def cmd_template(args) -> int:
    models = parse_models(args.model)
    grid = parse_grid(args.grid, ("p", "p_over_m"))
    params = DetectorParams(rest_mass=1.0, gap=args.E_over_m)
    medium = Medium(nu=args.nu)
    _check_params(params, medium)
    ps = grid.values()

    def row(p: float) -> list[float]:
        values = [template(TemplateQuery(m, params, medium, float(p))) for m in models]
        return [float(p), *values]

    try:
        rows = _map_rows(row, list(ps))
    except (DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    columns = ["p_over_m"] + [f"T_{m.value}" for m in models]
    comments = {
        "subcommand": "template",
        "models": ",".join(m.value for m in models),
        "E_over_m": _fmt(args.E_over_m),
        "nu": _fmt(args.nu),
        "units": "T in units of m; p in units of m",
    }
    out = Path(args.out)
    write_table(out, comments, columns, rows, args.format)
    write_manifest(out, _manifest("template", {
        "models": [m.value for m in models],
        "E_over_m": args.E_over_m, "nu": args.nu,
        "grid": vars(grid) | {"values": "derived"},
    }, columns, out))
    return EXIT_OK


def _single_rate(model, params, medium, state, rel_tol):
    """One rate value; NaN with a message on non-convergence."""
    if medium.is_vacuum and state.mean_momentum == 0.0 and model in RELATIVISTIC_PAIR:
        res = rate_analytic_vacuum(model, params, state)
        return res.rate, res.abs_error_estimate, None
    try:
        res = rate_quadrature(model, params, medium, state, rel_tol=rel_tol)
        return res.rate, res.abs_error_estimate, None
    except RateConvergenceError as exc:
        return math.nan, math.nan, str(exc)


def cmd_rate(args) -> int:
    models = parse_models(args.model)
    grid = parse_grid(args.grid, ("E_over_m", "L_over_lambda_c"))
    medium = Medium(nu=args.nu)
    failures: list[str] = []

    def row(x: float) -> list[float]:
        if grid.var == "E_over_m":
            params = DetectorParams(rest_mass=1.0, gap=float(x))
            state = GaussianState(width=args.L, mean_momentum=args.pD)
        else:
            params = DetectorParams(rest_mass=1.0, gap=args.E_over_m)
            state = GaussianState(width=float(x), mean_momentum=args.pD)
        _check_params(params, medium)
        out_row = [float(x)]
        for model in models:
            rate, err, failure = _single_rate(model, params, medium, state, args.rel_tol)
            if failure:
                failures.append(f"{grid.var}={x:g}, model={model.value}: {failure}")
            out_row.extend([rate, err])
        return out_row

    try:
        rows = _map_rows(row, list(grid.values()))
    except (DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    columns = [grid.var]
    for m in models:
        columns.extend([f"rate_{m.value}", f"err_{m.value}"])
    comments = {
        "subcommand": "rate",
        "models": ",".join(m.value for m in models),
        "nu": _fmt(args.nu),
        "pD_over_m": _fmt(args.pD),
        "rel_tol": _fmt(args.rel_tol),
        "units": "rate in units of lambda^2 m (first-quantized coupling)",
    }
    if grid.var == "E_over_m":
        comments["L_over_lambda_c"] = _fmt(args.L)
    else:
        comments["E_over_m"] = _fmt(args.E_over_m)
    out = Path(args.out)
    write_table(out, comments, columns, rows, args.format)
    write_manifest(out, _manifest("rate", {
        "models": [m.value for m in models], "nu": args.nu, "L": args.L,
        "pD": args.pD, "E_over_m": args.E_over_m, "grid": vars(grid),
    }, columns, out, rel_tol=args.rel_tol))
    if failures:
        print(f"{len(failures)} row(s) failed to converge:", file=sys.stderr)
        for line in failures:
            print(f"  {line}", file=sys.stderr)
        return EXIT_NONCONVERGED
    return EXIT_OK


def cmd_compare(args) -> int:
    models = parse_models(args.model)
    if len(models) != 2:
        raise UsageError(f"compare needs exactly two models, got {len(models)}")
    if args.preset == "hydrogen":
        e_over_m = HYDROGEN_E_OVER_M
        width = HYDROGEN_L_ME / (1.0 + e_over_m)
    else:
        e_over_m = args.E_over_m
        width = args.L
    medium = Medium(nu=args.nu)
    params = DetectorParams(rest_mass=1.0, gap=e_over_m)
    state = GaussianState(width=width, mean_momentum=args.pD)
    _check_params(params, medium)

    if args.grid:
        grid = parse_grid(args.grid, ("E_over_m", "L_over_lambda_c"))
        xs = list(grid.values())
    else:
        grid = None
        xs = [None]  # single point at the echoed parameters

    def point(x) -> dict:
        if grid is None:
            p, s = params, state
            x_echo = {"E_over_m": p.gap, "L_over_lambda_c": s.width}
        elif grid.var == "E_over_m":
            p = DetectorParams(rest_mass=1.0, gap=float(x))
            s = state
            x_echo = {"E_over_m": float(x), "L_over_lambda_c": s.width}
        else:
            p = params
            s = GaussianState(width=float(x), mean_momentum=args.pD)
            x_echo = {"E_over_m": p.gap, "L_over_lambda_c": float(x)}
        ra, ea, fa = _single_rate(models[0], p, medium, s, args.rel_tol)
        rb, eb, fb = _single_rate(models[1], p, medium, s, args.rel_tol)
        mean = 0.5 * (ra + rb)
        frac = abs(ra - rb) / mean if mean > 0.0 else 0.0
        lme = s.width * p.mass_excited
        return {
            **x_echo,
            f"rate_{models[0].value}": ra,
            f"rate_{models[1].value}": rb,
            "fractional_difference": frac,
            "expansion_prediction_3_over_LMe_sq": 3.0 / (lme * lme),
            "L_times_Me": lme,
        }

    try:
        points = _map_rows(point, xs)
    except (DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    headline = points[-1]
    report = {
        "subcommand": "compare",
        "models": [m.value for m in models],
        "nu": args.nu,
        "pD_over_m": args.pD,
        "rel_tol": args.rel_tol,
        "preset": args.preset,
        "points": points,
        "headline": {
            "fractional_difference": headline["fractional_difference"],
            "expansion_prediction_3_over_LMe_sq":
                headline["expansion_prediction_3_over_LMe_sq"],
            "L_times_Me": headline["L_times_Me"],
            "order_of_magnitude": (
                math.floor(math.log10(headline["fractional_difference"]))
                if headline["fractional_difference"] > 0.0 else None
            ),
        },
        "build": _build_id(),
    }
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(report, indent=2) + "\n")
    return EXIT_OK


def cmd_overlap(args) -> int:
    grid = parse_grid(args.grid, ("Mr",))
    rows = []
    try:
        for mr in grid.values():
            q = OverlapQuery(mass=1.0, separation=float(mr))
            kern = overlap_kernel(q)
            oracle = overlap_fourier_oracle(q, tol=args.rel_tol)
            rel = abs(kern - oracle) / kern if kern > 0.0 else math.nan
            rows.append([float(mr), kern, oracle, rel])
    except (DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    columns = ["M_r", "kernel", "fourier_oracle", "rel_difference"]
    comments = {
        "subcommand": "overlap",
        "units": "kernel in units of M^2; separation in Compton units",
        "rel_tol": _fmt(args.rel_tol),
    }
    out = Path(args.out)
    write_table(out, comments, columns, rows, args.format)
    write_manifest(out, _manifest("overlap", {"grid": vars(grid)}, columns, out,
                                  rel_tol=args.rel_tol))
    return EXIT_OK


def cmd_figure(args) -> int:
    preset = FIGURE_PRESETS.get(args.preset)
    if preset is None:
        raise UsageError(f"unknown preset {args.preset!r}; "
                         f"choose from {', '.join(FIGURE_PRESETS)}")
    out_dir = Path(args.out_dir)
    out = out_dir / f"{args.preset}.csv"
    kind = preset["kind"]
    grid = GridSpec(*preset["grid"])
    rel_tol = args.rel_tol

    if kind == "template":
        models = parse_models(preset["models"])
        params = DetectorParams(rest_mass=1.0, gap=preset["E_over_m"])
        medium = Medium(nu=preset["nu"])
        rows = [[float(p)] + [template(TemplateQuery(m, params, medium, float(p)))
                              for m in models]
                for p in grid.values()]
        columns = ["p_over_m"] + [f"T_{m.value}" for m in models]
        parameters = {"models": [m.value for m in models],
                      "E_over_m": preset["E_over_m"], "nu": preset["nu"]}
    elif kind == "rate":
        models = parse_models(preset["models"])
        medium = Medium(nu=preset["nu"])
        state = GaussianState(width=preset["L"])

        def rate_row(e):
            params = DetectorParams(rest_mass=1.0, gap=float(e))
            row = [float(e)]
            for m in models:
                rate, err, _ = _single_rate(m, params, medium, state, rel_tol)
                row.extend([rate, err])
            return row

        rows = _map_rows(rate_row, list(grid.values()))
        columns = [grid.var]
        for m in models:
            columns.extend([f"rate_{m.value}", f"err_{m.value}"])
        parameters = {"models": [m.value for m in models], "nu": preset["nu"],
                      "L_over_lambda_c": preset["L"]}
    elif kind == "rate-medium":
        models = list(RELATIVISTIC_PAIR)
        state = GaussianState(width=preset["L"])

        def medium_row(e):
            params = DetectorParams(rest_mass=1.0, gap=float(e))
            row = [float(e)]
            for m in models:
                for nu in preset["nus"]:
                    rate, err, _ = _single_rate(m, params, Medium(nu=nu), state, rel_tol)
                    row.extend([rate, err])
            return row

        rows = _map_rows(medium_row, list(grid.values()))
        columns = [grid.var]
        for m in models:
            for nu in preset["nus"]:
                tag = f"{m.value}_nu{nu:g}"
                columns.extend([f"rate_{tag}", f"err_{tag}"])
        parameters = {"models": [m.value for m in models], "nus": list(preset["nus"]),
                      "L_over_lambda_c": preset["L"]}
    elif kind == "rate-widths":
        model = TemplateModel.from_name(preset["model"])
        medium = Medium.vacuum()

        def width_row(e):
            params = DetectorParams(rest_mass=1.0, gap=float(e))
            row = [float(e)]
            for width in preset["widths"]:
                rate, err, _ = _single_rate(model, params, medium,
                                            GaussianState(width=width), rel_tol)
                row.extend([rate, err])
            return row

        rows = _map_rows(width_row, list(grid.values()))
        columns = [grid.var]
        for width in preset["widths"]:
            columns.extend([f"rate_L{width:g}", f"err_L{width:g}"])
        parameters = {"model": preset["model"], "nu": 1.0,
                      "widths_L_over_lambda_c": list(preset["widths"])}
    else:  # pragma: no cover
        raise UsageError(f"unhandled preset kind {kind}")

    comments = {"subcommand": "figure", "preset": args.preset,
                "units": "Compton units; rates in lambda^2 m"}
    write_table(out, comments, columns, rows, "csv")
    write_manifest(out, _manifest("figure", {"preset": args.preset, **parameters,
                                             "grid": vars(grid)},
                                  columns, out, rel_tol=rel_tol))
    print(out)
    return EXIT_OK


# --- parser -------------------------------------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(prog="udwkit", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p, *, rate_like: bool):
        p.add_argument("--model", default="all",
                       help="comma-separated model list or 'all'")
        p.add_argument("--E-over-m", dest="E_over_m", type=float, default=1e-3)
        p.add_argument("--nu", type=float, default=1.0)
        p.add_argument("--pD", type=float, default=0.0)
        p.add_argument("--out", required=True)
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        if rate_like:
            p.add_argument("--L", type=float, default=10.0,
                           help="Gaussian width in Compton units (L/lambda_c)")
            p.add_argument("--rel-tol", dest="rel_tol", type=float, default=1e-9)

    p_template = sub.add_parser("template", help="template-function sweep")
    add_common(p_template, rate_like=False)
    p_template.add_argument("--grid", required=True,
                            help="p:min:max:count:spacing")
    p_template.set_defaults(func=cmd_template)

    p_rate = sub.add_parser("rate", help="emission-rate sweep")
    add_common(p_rate, rate_like=True)
    p_rate.add_argument("--grid", required=True,
                        help="E_over_m|L_over_lambda_c:min:max:count:spacing")
    p_rate.set_defaults(func=cmd_rate)

    p_cmp = sub.add_parser("compare", help="fractional difference of two models")
    add_common(p_cmp, rate_like=True)
    p_cmp.add_argument("--grid", default=None,
                       help="optional E_over_m|L_over_lambda_c:min:max:count:spacing")
    p_cmp.add_argument("--preset", choices=("hydrogen",), default=None)
    p_cmp.set_defaults(func=cmd_compare, model="rel-first,rel-second")

    p_overlap = sub.add_parser("overlap", help="position-state overlap sweep")
    p_overlap.add_argument("--grid", required=True, help="Mr:min:max:count:spacing")
    p_overlap.add_argument("--rel-tol", dest="rel_tol", type=float, default=1e-9)
    p_overlap.add_argument("--out", required=True)
    p_overlap.add_argument("--format", choices=("csv", "json"), default="csv")
    p_overlap.set_defaults(func=cmd_overlap)

    p_fig = sub.add_parser("figure", help="emit a named figure preset")
    p_fig.add_argument("--preset", required=True)
    p_fig.add_argument("--out-dir", dest="out_dir", default=".")
    p_fig.add_argument("--rel-tol", dest="rel_tol", type=float, default=1e-9)
    p_fig.set_defaults(func=cmd_figure)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except RateConvergenceError as exc:
        print(f"non-convergence: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGED


if __name__ == "__main__":
    sys.exit(main())
