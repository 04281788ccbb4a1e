"""CLI contract tests: flags, file outputs, exit-code discipline, determinism."""

import csv
import json

import pytest

from macckit.cli import (
    EXIT_CHECK_FAILED,
    EXIT_IO,
    EXIT_OK,
    EXIT_USAGE,
    main,
    parse_families,
    parse_grid,
)


def run_cli(*argv):
    return main(list(argv))


class TestBoundsCommand:
    def test_csv_sweep_hits_exact_points(self, tmp_path):
        out = tmp_path / "curves.csv"
        code = run_cli(
            "bounds", "--K", "3", "--L", "2", "--N", "3",
            "--families", "cutset,improved", "--grid", "0:3/2:151",
            "--format", "csv", "--out", str(out),
        )
        assert code == EXIT_OK
        rows = list(csv.DictReader(out.open()))
        assert len(rows) == 302
        improved = {row["M"]: row["R"] for row in rows if row["family"] == "improved_thm2"}
        assert improved["1"] == "1/3"
        assert improved["3/2"] == "0"

    def test_csv_sweep_through_kink_memory(self, tmp_path):
        # step 1/6 puts the M = 2/3 kink exactly on the grid
        out = tmp_path / "curves.csv"
        code = run_cli(
            "bounds", "--K", "3", "--L", "2", "--N", "3",
            "--families", "improved", "--grid", "0:3/2:10",
            "--format", "csv", "--out", str(out),
        )
        assert code == EXIT_OK
        improved = {row["M"]: row["R"] for row in csv.DictReader(out.open())}
        assert improved["2/3"] == "1"

    def test_default_families_include_all(self, tmp_path):
        out = tmp_path / "curves.csv"
        code = run_cli(
            "bounds", "--K", "10", "--L", "3", "--N", "10",
            "--grid", "0:10/3:11", "--out", str(out),
        )
        assert code == EXIT_OK
        families = {row["family"] for row in csv.DictReader(out.open())}
        assert families == {"cutset_thm1", "improved_thm2", "hkd_lemma2", "hkd2_lemma3", "best"}

    def test_figure_setting_20_5_20(self, tmp_path):
        out = tmp_path / "curves.json"
        code = run_cli(
            "bounds", "--K", "20", "--L", "5", "--N", "20",
            "--grid", "0:4:41", "--format", "json", "--out", str(out),
        )
        assert code == EXIT_OK
        payload = json.loads(out.read_text())
        assert len(payload["curves"]) == 5

    def test_invalid_params_exit_2(self, tmp_path):
        code = run_cli("bounds", "--K", "2", "--L", "3", "--N", "2",
                       "--out", str(tmp_path / "x.csv"))
        assert code == EXIT_USAGE

    def test_unknown_flag_exit_2(self):
        assert run_cli("bounds", "--definitely-not-a-flag") == EXIT_USAGE

    def test_byte_identical_reruns(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        argv = ["bounds", "--K", "3", "--L", "2", "--N", "3", "--grid", "0:3/2:31"]
        assert run_cli(*argv, "--out", str(a)) == EXIT_OK
        assert run_cli(*argv, "--out", str(b)) == EXIT_OK
        assert a.read_bytes() == b.read_bytes()

    def test_out_dir_env_fallback(self, tmp_path, monkeypatch):
        monkeypatch.setenv("MACCKIT_OUT_DIR", str(tmp_path))
        code = run_cli("bounds", "--K", "3", "--L", "2", "--N", "3", "--grid", "0:1:3")
        assert code == EXIT_OK
        assert (tmp_path / "bounds_K3_L2_N3.csv").exists()


class TestCompareCommand:
    def test_dominance_holds_10_7_10(self, tmp_path):
        out = tmp_path / "report.json"
        code = run_cli("compare", "--K", "10", "--L", "7", "--N", "10",
                       "--grid", "0:10/7:51", "--out", str(out))
        assert code == EXIT_OK
        payload = json.loads(out.read_text())
        assert payload["violations"] == []
        assert len(payload["points"]) == 51

    def test_report_carries_margins(self, tmp_path):
        out = tmp_path / "report.json"
        assert run_cli("compare", "--K", "3", "--L", "2", "--N", "3",
                       "--out", str(out)) == EXIT_OK
        point = json.loads(out.read_text())["points"][0]
        assert {"M", "improved_margin", "cutset_margin"} <= set(point)

    def test_malformed_grid_exit_2(self, tmp_path):
        assert run_cli("compare", "--K", "3", "--L", "2", "--N", "3",
                       "--grid", "0..1..5", "--out", str(tmp_path / "r.json")) == EXIT_USAGE
        assert run_cli("compare", "--K", "3", "--L", "2", "--N", "3",
                       "--grid", "0:3/2:1", "--out", str(tmp_path / "r.json")) == EXIT_USAGE

    def test_io_failure_exit_3(self, tmp_path):
        missing = tmp_path / "no" / "such" / "dir" / "r.json"
        assert run_cli("compare", "--K", "3", "--L", "2", "--N", "3",
                       "--out", str(missing)) == EXIT_IO


class TestSimulateCommand:
    def test_coded_scheme_passes(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        code = run_cli("simulate", "--scheme", "appendix-b", "--F", "12",
                       "--seed", "7", "--out", str(out))
        assert code == EXIT_OK
        assert "worst-case rate 1" in capsys.readouterr().out
        payload = json.loads(out.read_text())
        assert payload["worst_case_rate"] == "1"
        assert payload["seed"] == 7
        assert all(entry["pass"] for entry in payload["per_demand"])

    def test_corner_scheme_rate_zero(self, capsys):
        assert run_cli("simulate", "--scheme", "corner-323", "--F", "12") == EXIT_OK
        assert "worst-case rate 0" in capsys.readouterr().out

    def test_zero_memory_scheme_on_custom_params(self, capsys):
        code = run_cli("simulate", "--scheme", "zero-memory",
                       "--K", "5", "--L", "2", "--N", "3", "--F", "6")
        assert code == EXIT_OK
        assert "worst-case rate 3" in capsys.readouterr().out

    def test_bad_subpacketization_exit_2(self):
        assert run_cli("simulate", "--scheme", "appendix-b", "--F", "10") == EXIT_USAGE

    def test_fixed_scheme_rejects_other_params(self):
        assert run_cli("simulate", "--scheme", "appendix-b", "--K", "4", "--L", "2",
                       "--N", "3", "--F", "12") == EXIT_USAGE

    def test_points_export(self, tmp_path):
        out = tmp_path / "points.csv"
        assert run_cli("simulate", "--scheme", "corner-323", "--F", "12",
                       "--points-out", str(out)) == EXIT_OK
        assert out.read_text() == "M,R,scheme_id\n3/2,0,corner-323\n"

    def test_failure_exit_code(self, monkeypatch):
        # a doctored report exercises the exit-1 path without corrupting state
        import macckit.cli as cli
        import macckit.schemes as schemes

        real = schemes.verify_scheme

        def sabotaged(scheme, library, caches=None):
            report = real(scheme, library, caches)
            return schemes.VerificationReport(
                scheme_id=report.scheme_id, params=report.params, F=report.F,
                seed=report.seed, worst_case_rate=report.worst_case_rate,
                per_demand=report.per_demand, failures=(((1, 1, 1), 1),),
            )

        monkeypatch.setattr(cli.schemes, "verify_scheme", sabotaged)
        assert run_cli("simulate", "--scheme", "appendix-b", "--F", "12") == EXIT_CHECK_FAILED


class TestEntropyCommand:
    def test_batches_pass(self, tmp_path):
        out = tmp_path / "entropy.json"
        code = run_cli("entropy-test", "--K", "3", "--alphabet", "2",
                       "--trials", "100", "--seed", "1", "--out", str(out))
        assert code == EXIT_OK
        payload = json.loads(out.read_text())
        assert payload["sliding"]["failures"] == []
        assert payload["conditional"]["failures"] == []

    def test_zero_trials_exit_2(self):
        assert run_cli("entropy-test", "--trials", "0") == EXIT_USAGE

    def test_deterministic_reports(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        argv = ["entropy-test", "--K", "3", "--alphabet", "2", "--trials", "20", "--seed", "9"]
        assert run_cli(*argv, "--out", str(a)) == EXIT_OK
        assert run_cli(*argv, "--out", str(b)) == EXIT_OK
        assert a.read_bytes() == b.read_bytes()


class TestParsers:
    def test_grid_parsing(self):
        grid = parse_grid("0:3/2:4")
        assert [str(m) for m in grid] == ["0", "1/2", "1", "3/2"]
        with pytest.raises(ValueError):
            parse_grid("0:1")
        with pytest.raises(ValueError):
            parse_grid("0:1:0")
        with pytest.raises(ValueError):
            parse_grid("a:b:c")

    def test_family_aliases(self):
        assert parse_families("cutset,improved") == ["cutset_thm1", "improved_thm2"]
        assert parse_families("hkd_lemma2,best") == ["hkd_lemma2", "best"]
        with pytest.raises(ValueError):
            parse_families("cutset,nonsense")

    def test_help_exits_zero(self):
        assert run_cli("--help") == EXIT_OK
