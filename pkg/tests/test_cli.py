import csv
import io
import json

import pytest

from ptscarf.cli import main


def run_cli(tmp_path, args, name="out.json"):
    out = tmp_path / name
    code = main([*args, "--out", str(out)])
    text = out.read_text(encoding="utf-8") if out.exists() else ""
    return code, text


class TestPotentialCommand:
    def test_broken_point(self, tmp_path):
        code, text = run_cli(
            tmp_path,
            ["potential", "--A", "1.5", "--B", "2", "--alpha", "1", "--cpt", "0.5"],
        )
        assert code == 0
        payload = json.loads(text)
        assert payload["regime"] == "broken"
        assert payload["potential"]["s"] == {"re": -7.25, "im": 0.0}
        assert payload["potential"]["t"] == {"re": 0.0, "im": 8.5}
        assert payload["pt_symmetric_potential"] is True
        assert [w["label"] for w in payload["superpotentials"]] == ["plus", "minus"]

    def test_unbroken_point(self, tmp_path):
        code, text = run_cli(
            tmp_path, ["potential", "--A", "1", "--B", "2", "--alpha", "1", "--cpt", "0"]
        )
        assert code == 0
        payload = json.loads(text)
        assert payload["regime"] == "unbroken"
        assert payload["potential"]["s"] == {"re": -6.0, "im": 0.0}
        assert payload["potential"]["t"] == {"re": 0.0, "im": 6.0}

    def test_flags_before_subcommand(self, tmp_path):
        code, text = run_cli(
            tmp_path, ["--A", "1.5", "--B", "2", "--alpha", "1", "--cpt", "0.5", "potential"]
        )
        assert code == 0
        assert json.loads(text)["regime"] == "broken"

    def test_not_pt_symmetric_exits_2(self, tmp_path, capsys):
        code, text = run_cli(
            tmp_path, ["potential", "--A", "1", "--B", "1", "--cpt", "0.5"]
        )
        assert code == 2
        assert text == ""
        assert "PT-symmetry condition" in capsys.readouterr().err

    def test_output_is_canonical_json(self, tmp_path):
        _, text = run_cli(
            tmp_path, ["potential", "--A", "1.5", "--B", "2", "--cpt", "0.5"]
        )
        assert json.dumps(json.loads(text), sort_keys=True, indent=2) + "\n" == text


class TestValidation:
    def test_missing_b(self, tmp_path):
        code, _ = run_cli(tmp_path, ["potential", "--A", "1"])
        assert code == 3

    def test_bad_alpha(self, tmp_path):
        code, _ = run_cli(tmp_path, ["potential", "--A", "1", "--B", "2", "--alpha", "-1"])
        assert code == 3

    def test_even_points(self, tmp_path):
        code, _ = run_cli(
            tmp_path, ["spectrum", "--A", "1", "--B", "2", "--points", "600"]
        )
        assert code == 3

    def test_scan_needs_bounds(self, tmp_path):
        code, _ = run_cli(tmp_path, ["scan", "--A", "1.5"])
        assert code == 3

    def test_scan_steps_minimum(self, tmp_path):
        code, _ = run_cli(
            tmp_path,
            ["scan", "--A", "1.5", "--scan-min", "0", "--scan-max", "1", "--scan-steps", "1"],
        )
        assert code == 3

    def test_unknown_flag_maps_to_validation(self, tmp_path):
        assert main(["potential", "--A", "1", "--B", "2", "--bogus", "3"]) == 3

    def test_invalid_order_choice(self, tmp_path):
        code, _ = run_cli(
            tmp_path, ["spectrum", "--A", "1", "--B", "2", "--order", "3"]
        )
        assert code == 3

    def test_help_exits_zero(self):
        assert main(["--help"]) == 0


class TestSpectrumCommand:
    def test_broken_small_grid(self, tmp_path):
        code, text = run_cli(
            tmp_path,
            [
                "spectrum", "--A", "1.5", "--B", "2", "--cpt", "0.5",
                "--points", "601", "--order", "4",
            ],
        )
        assert code == 0
        payload = json.loads(text)
        assert len(payload["matches"]) == 4
        assert payload["unmatched_analytic"] == []
        assert payload["pairing"]["max_defect"] <= 1e-3
        assert payload["ground_state_pt_invariant"] is False
        assert payload["grid"]["n_points"] == 601

    def test_unresolvable_grid_exits_4(self, tmp_path, capsys):
        code, text = run_cli(
            tmp_path,
            [
                "spectrum", "--A", "2.5", "--B", "1",
                "--points", "7", "--order", "2",
            ],
        )
        assert code == 4
        payload = json.loads(text)
        assert payload["unmatched_analytic"]
        assert "without numerical partner" in capsys.readouterr().err

    def test_emitted_json_round_trips(self, tmp_path):
        _, text = run_cli(
            tmp_path,
            ["spectrum", "--A", "1.5", "--B", "2", "--cpt", "0.5", "--points", "601"],
        )
        assert json.dumps(json.loads(text), sort_keys=True, indent=2) + "\n" == text


class TestScanCommand:
    BASE = [
        "scan", "--A", "1.5", "--B", "2", "--alpha", "1",
        "--points", "601", "--order", "4",
    ]

    def test_two_step_scan_hits_endpoints(self, tmp_path):
        code, text = run_cli(
            tmp_path,
            [*self.BASE, "--scan-min", "0", "--scan-max", "0.5", "--scan-steps", "2"],
            name="scan.csv",
        )
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(text)))
        c_values = sorted({float(r["c_pt"]) for r in rows})
        assert c_values == [0.0, 0.5]
        broken_rows = [r for r in rows if float(r["c_pt"]) == 0.5]
        assert {r["sector"] for r in broken_rows} == {"plus", "minus"}
        for r in broken_rows:
            assert r["error"] == ""
            assert abs(float(r["abs_err"])) <= 5e-3

    def test_deterministic_and_jobs_invariant(self, tmp_path):
        args = [*self.BASE, "--scan-min", "0.2", "--scan-max", "0.5", "--scan-steps", "2"]
        _, first = run_cli(tmp_path, args, name="a.csv")
        _, second = run_cli(tmp_path, args, name="b.csv")
        _, threaded = run_cli(tmp_path, [*args, "--jobs", "2"], name="c.csv")
        assert first == second == threaded

    def test_degenerate_span_collapses_to_one_point(self, tmp_path):
        code, text = run_cli(
            tmp_path,
            [
                "scan", "--A", "1.5", "--B", "0.4", "--points", "601",
                "--scan-min", "0", "--scan-max", "0", "--scan-steps", "2",
            ],
            name="scan.csv",
        )
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(text)))
        assert {r["run_id"] for r in rows} == {"000"}
        assert {r["sector"] for r in rows} == {"primary"}
        for r in rows:
            assert abs(float(r["im_E_numeric"])) <= 1e-6

    def test_json_format(self, tmp_path):
        code, text = run_cli(
            tmp_path,
            [
                *self.BASE, "--scan-min", "0.5", "--scan-max", "0.5",
                "--scan-steps", "2", "--format", "json",
            ],
        )
        assert code == 0
        payload = json.loads(text)
        assert {row["sector"] for row in payload["rows"]} == {"plus", "minus"}


class TestVerifyCommand:
    def test_broken_point_all_pass(self, tmp_path):
        code, text = run_cli(
            tmp_path, ["verify", "--A", "1.5", "--B", "2", "--cpt", "0.5"]
        )
        assert code == 0
        payload = json.loads(text)
        assert payload["all_pass"] is True
        assert len(payload["properties"]) == 7
        assert {p["status"] for p in payload["properties"]} == {"pass"}

    def test_unbroken_point_skips_broken_only_checks(self, tmp_path):
        code, text = run_cli(tmp_path, ["verify", "--A", "1", "--B", "2"])
        assert code == 0
        payload = json.loads(text)
        statuses = {p["name"]: p["status"] for p in payload["properties"]}
        assert statuses["unique_broken_potential"] == "skipped"
        assert statuses["exchange_negates_cpt"] == "skipped"
        assert statuses["exchange_swaps_sectors"] == "skipped"
        assert statuses["pt_condition"] == "pass"
        assert statuses["ground_state_pt"] == "pass"

    def test_non_normalizable_ground_state_fails(self, tmp_path, capsys):
        code, text = run_cli(
            tmp_path, ["verify", "--A", "-1", "--B", "-0.5", "--cpt", "0.5"]
        )
        assert code == 1
        payload = json.loads(text)
        statuses = {p["name"]: p["status"] for p in payload["properties"]}
        assert statuses["ground_state_pt"] == "fail"
        assert "ground_state_pt" in capsys.readouterr().err

    def test_not_pt_symmetric_fails_condition(self, tmp_path):
        code, text = run_cli(tmp_path, ["verify", "--A", "1", "--B", "1", "--cpt", "0.5"])
        assert code == 1
        payload = json.loads(text)
        statuses = {p["name"]: p["status"] for p in payload["properties"]}
        assert statuses["pt_condition"] == "fail"


class TestConfigFile:
    def test_config_supplies_grid(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"points": 8}))
        code, _ = run_cli(
            tmp_path, ["potential", "--A", "1", "--B", "2", "--config", str(cfg)]
        )
        assert code == 3  # even point count from the config is rejected

    def test_flags_override_config(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"points": 8}))
        code, _ = run_cli(
            tmp_path,
            ["potential", "--A", "1", "--B", "2", "--config", str(cfg), "--points", "601"],
        )
        assert code == 0

    def test_unreadable_config(self, tmp_path):
        code, _ = run_cli(
            tmp_path,
            ["potential", "--A", "1", "--B", "2", "--config", str(tmp_path / "nope.json")],
        )
        assert code == 3


class TestLogging:
    def test_log_level_from_environment(self, tmp_path, monkeypatch):
        monkeypatch.setenv("PTSCARF_LOG", "debug")
        code, _ = run_cli(tmp_path, ["potential", "--A", "1.5", "--B", "2", "--cpt", "0.5"])
        assert code == 0

    def test_unknown_level_falls_back(self, tmp_path, monkeypatch):
        monkeypatch.setenv("PTSCARF_LOG", "chatty")
        code, _ = run_cli(tmp_path, ["potential", "--A", "1.5", "--B", "2", "--cpt", "0.5"])
        assert code == 0
