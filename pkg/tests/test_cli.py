"""Command-line behavior: output shapes, determinism, exit codes."""

import json
import math
import os

import pytest

from growthtrees.cli import main
from growthtrees.sweeps import CSV_COLUMNS, NA


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def read_rows(path):
    import csv

    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


class TestCompute:
    def test_tgraph2_geodesic(self, capsys):
        code, out, _ = run(capsys, "compute", "--seed", "edge", "--op",
                           "star-fractal", "--m", "1", "--t", "2",
                           "--what", "geodesic")
        assert code == 0
        payload = json.loads(out)
        assert payload["geodesic"]["s_exact"] == "117"
        assert payload["geodesic"]["n_t"] == "10"

    def test_subdivision_mfpt_is_eight(self, capsys):
        code, out, _ = run(capsys, "compute", "--seed", "edge", "--op",
                           "subdivision", "--t", "2", "--what", "mfpt")
        assert code == 0
        payload = json.loads(out)
        assert payload["mfpt"]["exact"]["decimal"] == "8"
        assert payload["mfpt"]["exact"]["ratio"] == "8/1"

    def test_path_seed_t0(self, capsys):
        code, out, _ = run(capsys, "compute", "--seed", "path:3", "--op",
                           "subdivision", "--t", "0", "--what", "geodesic")
        assert code == 0
        assert json.loads(out)["geodesic"]["s_exact"] == "4"

    def test_json_roundtrip_consistency(self, capsys):
        from fractions import Fraction

        from growthtrees.sweeps import significant

        code, out, _ = run(capsys, "compute", "--seed", "star:3", "--op",
                           "star-fractal", "--m", "2", "--t", "2",
                           "--what", "geodesic")
        assert code == 0
        geo = json.loads(out)["geodesic"]
        s, n = int(geo["s_exact"]), int(geo["n_t"])
        assert geo["avg_exact"]["decimal"] == significant(Fraction(2 * s, n * (n - 1)))

    def test_bad_seed_spec_is_usage_error(self, capsys):
        code, _, err = run(capsys, "compute", "--seed", "blob", "--op",
                           "subdivision", "--t", "1")
        assert code == 1
        assert "seed spec" in err

    def test_star_fractal_requires_m(self, capsys):
        code, _, err = run(capsys, "compute", "--seed", "edge", "--op",
                           "star-fractal", "--t", "1")
        assert code == 1
        assert "--m" in err


class TestGenerate:
    def test_writes_tgraph2(self, capsys, tmp_path):
        out = tmp_path / "tg2.edges"
        code, _, _ = run(capsys, "generate", "--seed", "edge", "--op",
                         "star-fractal", "--m", "1", "--t", "2",
                         "--out", str(out))
        assert code == 0
        lines = out.read_text().splitlines()
        comments = [ln for ln in lines if ln.startswith("#")]
        edges = [ln for ln in lines if ln and not ln.startswith("#")]
        assert len(edges) == 9
        assert any("t: 2" in c for c in comments)
        assert any("n: 10" in c for c in comments)

    def test_grown_file_reloads(self, capsys, tmp_path):
        out = tmp_path / "p5.edges"
        code, _, _ = run(capsys, "generate", "--seed", "path:3", "--op",
                         "subdivision", "--t", "1", "--out", str(out))
        assert code == 0
        from growthtrees import read_edge_list

        assert read_edge_list(str(out)).n == 5

    def test_size_limit_exit_code(self, capsys, tmp_path):
        code, _, err = run(capsys, "generate", "--seed", "edge", "--op",
                           "subdivision", "--t", "40",
                           "--out", str(tmp_path / "never.edges"))
        assert code == 3
        assert "limit" in err


class TestVerify:
    def test_small_corpus_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--corpus", "small")
        assert code == 0
        assert "10/10 suites passed" in out

    def test_fault_injection_fails(self, capsys):
        code, out, _ = run(capsys, "verify", "--corpus", "small", "--inject-fault")
        assert code >= 1
        assert "FAIL" in out

    def test_fault_injection_via_env(self, capsys, monkeypatch):
        monkeypatch.setenv("GROWTHTREES_INJECT_FAULT", "1")
        code, out, _ = run(capsys, "verify", "--corpus", "small")
        assert code >= 1


class TestSweep:
    def test_fig3_row_count_and_oracle_agreement(self, capsys, tmp_path):
        out = tmp_path / "fig3.csv"
        code, _, _ = run(capsys, "sweep", "--figure", "fig3", "--t-max", "5",
                         "--out", str(out))
        assert code == 0
        rows = read_rows(out)
        assert len(rows) == 25  # m in 0..4, t in 1..5
        assert list(rows[0].keys()) == CSV_COLUMNS
        for row in rows:
            assert row["avg_oracle"] != NA
            assert row["avg_oracle"] == row["avg_exact"]
            assert all(row[c] != "" for c in CSV_COLUMNS)
        assert (tmp_path / "fig3.png").exists()

    def test_fig3_reruns_byte_identical(self, capsys, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for target in (a, b):
            code, _, _ = run(capsys, "sweep", "--figure", "fig3", "--t-max", "4",
                             "--out", str(target), "--no-plot")
            assert code == 0
        assert a.read_bytes() == b.read_bytes()

    def test_fig6_slope_close_to_theory(self, capsys, tmp_path):
        out = tmp_path / "fig6.csv"
        code, _, _ = run(capsys, "sweep", "--figure", "fig6", "--t-max", "5",
                         "--trials", "50", "--pair-budget", "6",
                         "--out", str(out), "--no-plot")
        assert code == 0
        rows = [r for r in read_rows(out) if r["m"] == "1"]
        assert len(rows) == 5
        xs = [math.log(float(r["n_t"])) for r in rows]
        ys = [math.log(float(r["mfpt_exact"])) for r in rows]
        mean_x, mean_y = sum(xs) / len(xs), sum(ys) / len(ys)
        slope = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys)) / sum(
            (x - mean_x) ** 2 for x in xs
        )
        target = 1 + math.log(2) / math.log(3)
        assert abs(slope - target) <= 0.05 * target

    def test_fig6_mc_within_three_stderr(self, capsys, tmp_path):
        out = tmp_path / "fig6.csv"
        code, _, _ = run(capsys, "sweep", "--figure", "fig6", "--t-max", "2",
                         "--trials", "2000", "--pair-budget", "12",
                         "--out", str(out), "--no-plot")
        assert code == 0
        for row in read_rows(out):
            if row["mfpt_mc"] == NA:
                continue
            gap = abs(float(row["mfpt_mc"]) - float(row["mfpt_exact"]))
            assert gap <= 3 * max(float(row["mfpt_mc_stderr"]), 1e-9)

    def test_custom_sweep_matches_path_formula(self, capsys, tmp_path):
        from growthtrees import path_st

        out = tmp_path / "custom.csv"
        code, _, _ = run(capsys, "sweep", "--custom", "--seed", "edge", "--op",
                         "subdivision", "--t-min", "0", "--t-max", "10",
                         "--out", str(out), "--no-plot")
        assert code == 0
        rows = read_rows(out)
        assert [int(r["s_exact"]) for r in rows] == [path_st(t) for t in range(11)]

    def test_custom_needs_seed_and_op(self, capsys, tmp_path):
        code, _, err = run(capsys, "sweep", "--custom", "--out",
                           str(tmp_path / "x.csv"))
        assert code == 1

    def test_plot_rendered_by_default(self, capsys, tmp_path):
        out = tmp_path / "f.csv"
        code, _, _ = run(capsys, "sweep", "--figure", "fig3", "--t-max", "2",
                         "--out", str(out))
        assert code == 0
        assert (tmp_path / "f.png").exists()

    def test_fig6_and_custom_figures_render(self, capsys, tmp_path):
        code, _, _ = run(capsys, "sweep", "--figure", "fig6", "--t-max", "2",
                         "--trials", "50", "--pair-budget", "4",
                         "--out", str(tmp_path / "g.csv"),
                         "--plot", str(tmp_path / "picked.png"))
        assert code == 0
        assert (tmp_path / "picked.png").exists()
        code, _, _ = run(capsys, "sweep", "--custom", "--seed", "star:3",
                         "--op", "star-fractal", "--m", "2", "--t-max", "3",
                         "--out", str(tmp_path / "c.csv"))
        assert code == 0
        assert (tmp_path / "c.png").exists()

    def test_timings_flag_fills_columns(self, capsys, tmp_path):
        out = tmp_path / "t.csv"
        code, _, _ = run(capsys, "sweep", "--figure", "fig3", "--t-max", "2",
                         "--out", str(out), "--no-plot", "--timings")
        assert code == 0
        rows = read_rows(out)
        assert all(r["elapsed_ms_formula"] != NA for r in rows)


class TestWalk:
    @pytest.fixture()
    def tgraph1_file(self, capsys, tmp_path):
        path = tmp_path / "tg1.edges"
        code, _, _ = run(capsys, "generate", "--seed", "edge", "--op",
                         "star-fractal", "--m", "1", "--t", "1",
                         "--out", str(path))
        assert code == 0
        return str(path)

    def test_pair_walk_close_to_exact(self, capsys, tmp_path):
        path = tmp_path / "p3.edges"
        run(capsys, "generate", "--seed", "path:3", "--op", "subdivision",
            "--t", "0", "--out", str(path))
        code, out, _ = run(capsys, "walk", str(path), "--source", "1",
                           "--target", "0", "--trials", "20000", "--seed", "7")
        assert code == 0
        payload = json.loads(out)
        assert abs(payload["mean_steps"] - 3.0) <= 3 * payload["stderr"]
        assert payload["truncated"] == 0

    def test_mfpt_mode(self, capsys, tgraph1_file):
        code, out, _ = run(capsys, "walk", tgraph1_file, "--mfpt",
                           "--trials", "4000", "--seed", "13",
                           "--pair-budget", "12")
        assert code == 0
        payload = json.loads(out)
        assert abs(payload["mean_steps"] - 4.5) <= 3 * max(payload["stderr"], 1e-9)

    def test_byte_identical_output_for_same_seed(self, capsys, tgraph1_file):
        args = ("walk", tgraph1_file, "--source", "0", "--target", "3",
                "--trials", "5000", "--seed", "42")
        code_a, out_a, _ = run(capsys, *args)
        code_b, out_b, _ = run(capsys, *args)
        assert code_a == code_b == 0
        assert out_a == out_b

    def test_missing_endpoints_is_usage_error(self, capsys, tgraph1_file):
        code, _, err = run(capsys, "walk", tgraph1_file)
        assert code == 1

    def test_missing_file_fails(self, capsys, tmp_path):
        code, _, err = run(capsys, "walk", str(tmp_path / "nope.edges"),
                           "--source", "0", "--target", "1")
        assert code == 1
