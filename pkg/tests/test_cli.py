import json
import math

import numpy as np
import pytest

from udwkit import cli


def run(argv):
    return cli.main(argv)


def read_rows(path):
    rows = []
    columns = None
    for line in path.read_text().splitlines():
        if line.startswith("#"):
            continue
        if columns is None:
            columns = line.split(",")
            continue
        rows.append([float(x) for x in line.split(",")])
    return columns, rows


class TestTemplateSubcommand:
    def test_basic_sweep(self, tmp_path):
        out = tmp_path / "t.csv"
        code = run(["template", "--model", "all", "--E-over-m", "0.001",
                    "--nu", "1.0", "--grid", "p:1e-3:10:25:log",
                    "--out", str(out)])
        assert code == 0
        columns, rows = read_rows(out)
        assert columns[0] == "p_over_m"
        assert len(columns) == 6 and len(rows) == 25
        assert out.with_suffix(".manifest.json").exists()

    def test_single_point_grid(self, tmp_path):
        out = tmp_path / "one.csv"
        assert run(["template", "--model", "classical", "--grid",
                    "p:1.0:1.0:1:linear", "--out", str(out)]) == 0
        _, rows = read_rows(out)
        assert len(rows) == 1

    def test_determinism_byte_identical(self, tmp_path):
        args = ["template", "--model", "rel-first,non-rel", "--E-over-m", "0.01",
                "--nu", "0.9", "--grid", "p:1e-2:5:40:log"]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert run(args + ["--out", str(a)]) == 0
        assert run(args + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_thread_count_does_not_change_bytes(self, tmp_path, monkeypatch):
        args = ["template", "--model", "all", "--grid", "p:1e-3:10:60:log"]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        monkeypatch.setenv("UDW_THREADS", "1")
        assert run(args + ["--out", str(a)]) == 0
        monkeypatch.setenv("UDW_THREADS", "4")
        assert run(args + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_json_format(self, tmp_path):
        out = tmp_path / "t.json"
        assert run(["template", "--model", "classical", "--grid",
                    "p:0.1:1:3:linear", "--format", "json",
                    "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert doc["columns"][0] == "p_over_m"
        assert len(doc["rows"]) == 3


class TestUsageAndDomainErrors:
    def test_bad_grid_is_usage_error(self, tmp_path):
        assert run(["template", "--grid", "p:1:2:0:linear",
                    "--out", str(tmp_path / "x.csv")]) == 1
        assert run(["template", "--grid", "p:2:1:5:linear",
                    "--out", str(tmp_path / "x.csv")]) == 1
        assert run(["template", "--grid", "p:0:1:5:log",
                    "--out", str(tmp_path / "x.csv")]) == 1
        assert run(["template", "--grid", "nonsense",
                    "--out", str(tmp_path / "x.csv")]) == 1

    def test_unknown_model_is_usage_error(self, tmp_path):
        assert run(["template", "--model", "bogus", "--grid", "p:0.1:1:2:log",
                    "--out", str(tmp_path / "x.csv")]) == 1

    def test_invalid_physics_is_domain_error(self, tmp_path):
        assert run(["template", "--nu", "1.5", "--grid", "p:0.1:1:2:log",
                    "--out", str(tmp_path / "x.csv")]) == 2
        assert run(["rate", "--E-over-m", "-0.5",
                    "--grid", "L_over_lambda_c:0.1:10:3:log",
                    "--out", str(tmp_path / "x.csv")]) == 2

    def test_nonconvergence_maps_to_exit_3(self, tmp_path, monkeypatch):
        def always_fails(model, params, medium, state, rel_tol):
            return math.nan, math.nan, "forced failure"
        monkeypatch.setattr(cli, "_single_rate", always_fails)
        out = tmp_path / "r.csv"
        code = run(["rate", "--model", "classical",
                    "--grid", "E_over_m:1e-3:1e-2:2:log", "--out", str(out)])
        assert code == 3
        _, rows = read_rows(out)
        assert all(math.isnan(row[1]) for row in rows)


class TestRateSubcommand:
    def test_gap_sweep_with_errors_column(self, tmp_path):
        out = tmp_path / "r.csv"
        code = run(["rate", "--model", "rel-first,rel-second", "--nu", "1.0",
                    "--L", "10", "--grid", "E_over_m:1e-3:1:6:log",
                    "--out", str(out)])
        assert code == 0
        columns, rows = read_rows(out)
        assert columns == ["E_over_m", "rate_rel-first", "err_rel-first",
                           "rate_rel-second", "err_rel-second"]
        assert all(row[1] > 0 and row[3] > 0 for row in rows)

    def test_width_sweep(self, tmp_path):
        out = tmp_path / "rl.csv"
        code = run(["rate", "--model", "rel-first", "--E-over-m", "0.001",
                    "--grid", "L_over_lambda_c:0.1:10:5:log", "--out", str(out)])
        assert code == 0
        _, rows = read_rows(out)
        rates = [row[1] for row in rows]
        assert all(a >= b for a, b in zip(rates, rates[1:]))  # Fig. 5a shape


class TestCompareSubcommand:
    def test_self_comparison_is_all_zeros(self, tmp_path):
        out = tmp_path / "self.json"
        code = run(["compare", "--model", "rel-first,rel-first", "--L", "10",
                    "--E-over-m", "0.001", "--out", str(out)])
        assert code == 0
        doc = json.loads(out.read_text())
        assert all(pt["fractional_difference"] == 0.0 for pt in doc["points"])

    def test_hydrogen_preset_headline(self, tmp_path):
        out = tmp_path / "h.json"
        code = run(["compare", "--preset", "hydrogen", "--out", str(out)])
        assert code == 0
        doc = json.loads(out.read_text())
        headline = doc["headline"]
        frac = headline["fractional_difference"]
        pred = headline["expansion_prediction_3_over_LMe_sq"]
        assert pred == pytest.approx(4.8e-11, rel=1e-6)
        assert frac / pred == pytest.approx(1.0, abs=0.5)
        assert headline["order_of_magnitude"] in (-11, -10)

    def test_moderate_width_matches_expansion(self, tmp_path):
        out = tmp_path / "c.json"
        code = run(["compare", "--L", "100", "--E-over-m", "0.001",
                    "--out", str(out)])
        assert code == 0
        doc = json.loads(out.read_text())
        pt = doc["points"][0]
        assert pt["fractional_difference"] == pytest.approx(3e-4, rel=0.02)

    def test_needs_exactly_two_models(self, tmp_path):
        assert run(["compare", "--model", "rel-first", "--out",
                    str(tmp_path / "x.json")]) == 1


class TestOverlapSubcommand:
    def test_kernel_and_oracle_columns(self, tmp_path):
        out = tmp_path / "o.csv"
        code = run(["overlap", "--grid", "Mr:0.1:20:8:log", "--out", str(out)])
        assert code == 0
        columns, rows = read_rows(out)
        assert columns == ["M_r", "kernel", "fourier_oracle", "rel_difference"]
        assert all(row[3] <= 1e-8 for row in rows)


class TestFigurePresets:
    def test_unknown_preset(self, tmp_path):
        assert run(["figure", "--preset", "fig9z",
                    "--out-dir", str(tmp_path)]) == 1

    def test_template_preset_layout(self, tmp_path):
        code = run(["figure", "--preset", "fig1a", "--out-dir", str(tmp_path)])
        assert code == 0
        csv = tmp_path / "fig1a.csv"
        manifest = json.loads((tmp_path / "fig1a.manifest.json").read_text())
        columns, rows = read_rows(csv)
        assert len(rows) == 500
        assert columns[0] == "p_over_m" and len(columns) == 6
        assert manifest["parameters"]["E_over_m"] == 1e-3
        assert manifest["parameters"]["nu"] == 1.0

    def test_medium_preset_shows_interior_maximum(self, tmp_path):
        assert run(["figure", "--preset", "fig2b", "--out-dir", str(tmp_path)]) == 0
        columns, rows = read_rows(tmp_path / "fig2b.csv")
        idx = columns.index("T_rel-second")
        values = [row[idx] for row in rows]
        imax = int(np.argmax(values))
        assert 0 < imax < len(values) - 1

    def test_figure_rerun_is_byte_identical(self, tmp_path):
        d1, d2 = tmp_path / "one", tmp_path / "two"
        assert run(["figure", "--preset", "fig1b", "--out-dir", str(d1)]) == 0
        assert run(["figure", "--preset", "fig1b", "--out-dir", str(d2)]) == 0
        assert (d1 / "fig1b.csv").read_bytes() == (d2 / "fig1b.csv").read_bytes()
