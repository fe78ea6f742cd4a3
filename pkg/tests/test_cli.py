"""Command-line behaviour: flags, exit codes, config files, determinism."""

import json

import pytest

from credit_alloc.cli import main

RANKING_CSV = (
    "field,journal,rank,total,impact_factor\n"
    "Fisheries,Fisheries Research,12,50,1.843\n"
    "Geochemistry & Geophysics,Earth and Planetary Science Letters,5,80,4.724\n"
)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestAllocationRuns:
    def test_harmonic_three_authors(self, capsys):
        code, out, err = run_cli(
            capsys, "--t", "1200000", "--p", "0.5", "--r", "0.24",
            "--authors", "3", "--scheme", "harmonic",
        )
        assert code == 0
        assert err == ""
        for cell in ("576,000.00", "288,000.00", "192,000.00", "1,056,000.00"):
            assert cell in out

    def test_adjusted_eleven_authors_first_amount(self, capsys):
        code, out, _ = run_cli(
            capsys, "--t", "2000000", "--p", "0.5", "--r", "0.063",
            "--authors", "11", "--scheme", "acsi",
        )
        assert code == 0
        assert "647,702.46" in out
        assert "1,937,000.00" in out

    def test_equal_split_with_full_base_share(self, capsys):
        code, out, _ = run_cli(
            capsys, "--t", "1000000", "--p", "1", "--r", "0.9",
            "--authors", "2", "--scheme", "equal",
        )
        assert code == 0
        assert out.count("500,000.00") == 2

    def test_base_share_defaults_to_half(self, capsys):
        code, out, _ = run_cli(
            capsys, "--t", "1200000", "--r", "0.24", "--authors", "3",
            "--scheme", "harmonic",
        )
        assert code == 0
        assert "576,000.00" in out

    def test_default_scheme_is_adjusted(self, capsys):
        code, out, _ = run_cli(
            capsys, "--t", "1200000", "--r", "0.24", "--authors", "3",
            "--format", "json",
        )
        assert code == 0
        assert json.loads(out)["inputs"]["scheme"] == "adjusted-cantor"

    @pytest.mark.parametrize("alias,canonical", [
        ("hci", "harmonic"),
        ("csi", "cantor"),
        ("adjusted-cantor", "adjusted-cantor"),
        ("cantor", "cantor"),
    ])
    def test_scheme_aliases(self, capsys, alias, canonical):
        code, out, _ = run_cli(
            capsys, "--t", "1200000", "--r", "0.24", "--authors", "3",
            "--scheme", alias, "--format", "json",
        )
        assert code == 0
        assert json.loads(out)["inputs"]["scheme"] == canonical

    def test_undistributed_line_for_plain_geometric(self, capsys):
        code, out, _ = run_cli(
            capsys, "--t", "1200000", "--r", "0.24", "--authors", "3",
            "--scheme", "cantor",
        )
        assert code == 0
        assert "undistributed" in out
        assert "312,888.89" in out

    def test_csv_format_without_weights_by_default(self, capsys):
        code, out, _ = run_cli(
            capsys, "--t", "1200000", "--r", "0.24", "--authors", "3",
            "--scheme", "harmonic", "--format", "csv",
        )
        assert code == 0
        assert out.splitlines()[0] == "author,amount"

    def test_show_weights_adds_the_weight_column(self, capsys):
        code, out, _ = run_cli(
            capsys, "--t", "1200000", "--r", "0.24", "--authors", "3",
            "--scheme", "harmonic", "--format", "csv", "--show-weights",
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "author,weight,amount"
        assert lines[1] == "1,0.545,576000.00"

    def test_minor_unit_flag(self, capsys):
        code, out, _ = run_cli(
            capsys, "--t", "1200000", "--r", "0.24", "--authors", "3",
            "--scheme", "acsi", "--minor-unit", "0.1", "--format", "csv",
        )
        assert code == 0
        assert "1,456296.3" in out

    def test_json_format_parses(self, capsys):
        code, out, _ = run_cli(
            capsys, "--t", "1200000", "--r", "0.24", "--authors", "3",
            "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["total"] == 1_056_000.0
        assert len(payload["amounts"]) == 3

    def test_deterministic_output(self, capsys):
        argv = ("--t", "1200000", "--r", "0.24", "--authors", "7")
        _, first, _ = run_cli(capsys, *argv)
        _, second, _ = run_cli(capsys, *argv)
        assert first == second


class TestArgumentErrors:
    def test_missing_t(self, capsys):
        code, out, err = run_cli(capsys, "--r", "0.5", "--authors", "3")
        assert code == 2
        assert out == ""
        assert "--t is required" in err

    def test_zero_authors(self, capsys):
        code, _, err = run_cli(
            capsys, "--t", "1000", "--r", "0.5", "--authors", "0"
        )
        assert code == 2
        assert "author count" in err

    def test_nonpositive_t(self, capsys):
        code, _, err = run_cli(
            capsys, "--t", "0", "--r", "0.5", "--authors", "3"
        )
        assert code == 2
        assert "t must be positive" in err

    def test_out_of_range_base_share(self, capsys):
        code, _, err = run_cli(
            capsys, "--t", "1000", "--p", "1.5", "--r", "0.5", "--authors", "3"
        )
        assert code == 2

    def test_out_of_range_rank_fraction(self, capsys):
        code, _, err = run_cli(
            capsys, "--t", "1000", "--r", "0", "--authors", "3"
        )
        assert code == 2
        assert "rank fraction" in err

    def test_no_rank_source(self, capsys):
        code, _, err = run_cli(capsys, "--t", "1000", "--authors", "3")
        assert code == 2
        assert "no rank source" in err

    def test_conflicting_rank_sources(self, capsys):
        code, _, err = run_cli(
            capsys, "--t", "1000", "--r", "0.5", "--rank", "5", "--total", "80",
            "--authors", "3",
        )
        assert code == 2
        assert "conflicting rank sources" in err

    def test_rank_without_total(self, capsys):
        code, _, err = run_cli(
            capsys, "--t", "1000", "--rank", "5", "--authors", "3"
        )
        assert code == 2
        assert "--rank and --total" in err

    def test_incomplete_ranking_file_trio(self, capsys, tmp_path):
        path = tmp_path / "r.csv"
        path.write_text(RANKING_CSV, encoding="utf-8")
        code, _, err = run_cli(
            capsys, "--t", "1000", "--ranking-file", str(path), "--authors", "3"
        )
        assert code == 2
        assert "given together" in err

    def test_bad_minor_unit(self, capsys):
        code, _, err = run_cli(
            capsys, "--t", "1000", "--r", "0.5", "--authors", "3",
            "--minor-unit", "0",
        )
        assert code == 2

    def test_unknown_flag_exits_two(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["--bogus"])
        assert excinfo.value.code == 2

    def test_unknown_scheme_exits_two(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["--t", "1000", "--r", "0.5", "--authors", "3",
                  "--scheme", "fibonacci"])
        assert excinfo.value.code == 2


class TestRankingFileRuns:
    def _write(self, tmp_path, text=RANKING_CSV, name="rankings.csv"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    def test_lookup_flow(self, capsys, tmp_path):
        path = self._write(tmp_path)
        code, out, _ = run_cli(
            capsys, "--t", "1200000", "--ranking-file", path,
            "--field", "Fisheries", "--journal", "Fisheries Research",
            "--authors", "3", "--scheme", "harmonic",
        )
        assert code == 0
        assert "576,000.00" in out

    def test_json_ranking_file(self, capsys, tmp_path):
        records = [{
            "field": "Fisheries", "journal": "Fisheries Research",
            "rank": 12, "total": 50, "impact_factor": 1.843,
        }]
        path = tmp_path / "rankings.json"
        path.write_text(json.dumps(records), encoding="utf-8")
        code, out, _ = run_cli(
            capsys, "--t", "1200000", "--ranking-file", str(path),
            "--field", "fisheries", "--journal", "fisheries research",
            "--authors", "3", "--scheme", "harmonic",
        )
        assert code == 0
        assert "576,000.00" in out

    def test_journal_not_found_exits_three(self, capsys, tmp_path):
        path = self._write(tmp_path)
        code, out, err = run_cli(
            capsys, "--t", "1200000", "--ranking-file", path,
            "--field", "Fisheries", "--journal", "Fisheries Res",
            "--authors", "3",
        )
        assert code == 3
        assert out == ""
        assert "journal not found in field" in err
        assert "Fisheries Research" in err

    def test_missing_file_exits_three(self, capsys, tmp_path):
        code, _, err = run_cli(
            capsys, "--t", "1200000", "--ranking-file", str(tmp_path / "nope.csv"),
            "--field", "a", "--journal", "b", "--authors", "3",
        )
        assert code == 3
        assert "cannot read ranking file" in err

    def test_malformed_file_exits_three(self, capsys, tmp_path):
        path = self._write(tmp_path, text="not,a,valid,header\n")
        code, _, err = run_cli(
            capsys, "--t", "1200000", "--ranking-file", path,
            "--field", "a", "--journal", "b", "--authors", "3",
        )
        assert code == 3
        assert "header" in err


class TestConfigFile:
    def test_values_from_config(self, capsys, tmp_path):
        config = tmp_path / "policy.conf"
        config.write_text(
            "# institutional policy\n"
            "t = 1200000\n"
            "p = 0.5\n"
            "scheme = harmonic  # payout scheme\n"
            "minor_unit = 0.01\n",
            encoding="utf-8",
        )
        code, out, _ = run_cli(
            capsys, "--config", str(config), "--r", "0.24", "--authors", "3"
        )
        assert code == 0
        assert "576,000.00" in out

    def test_flags_override_config(self, capsys, tmp_path):
        config = tmp_path / "policy.conf"
        config.write_text("t = 999\nscheme = equal\n", encoding="utf-8")
        code, out, _ = run_cli(
            capsys, "--config", str(config), "--t", "1200000", "--r", "0.24",
            "--authors", "3", "--scheme", "harmonic", "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["inputs"]["total"] == 1_200_000.0
        assert payload["inputs"]["scheme"] == "harmonic"

    def test_cli_rank_source_silences_config_source(self, capsys, tmp_path):
        config = tmp_path / "policy.conf"
        config.write_text("r = 0.9\n", encoding="utf-8")
        code, out, _ = run_cli(
            capsys, "--config", str(config), "--t", "1200000",
            "--rank", "12", "--total", "50", "--authors", "3", "--format", "json",
        )
        assert code == 0
        assert json.loads(out)["inputs"]["rank_fraction"] == 0.24

    def test_quoted_values(self, capsys, tmp_path):
        path = tmp_path / "rankings.csv"
        path.write_text(RANKING_CSV, encoding="utf-8")
        config = tmp_path / "policy.conf"
        config.write_text(
            f'ranking_file = "{path}"\n'
            'field = "Fisheries"  # subject category\n'
            'journal = "Fisheries Research"\n',
            encoding="utf-8",
        )
        code, out, _ = run_cli(
            capsys, "--config", str(config), "--t", "1200000", "--authors", "3",
            "--scheme", "harmonic",
        )
        assert code == 0
        assert "576,000.00" in out

    def test_boolean_config_value(self, capsys, tmp_path):
        config = tmp_path / "policy.conf"
        config.write_text("show_weights = true\nformat = csv\n", encoding="utf-8")
        code, out, _ = run_cli(
            capsys, "--config", str(config), "--t", "1200000", "--r", "0.24",
            "--authors", "3", "--scheme", "harmonic",
        )
        assert code == 0
        assert out.splitlines()[0] == "author,weight,amount"

    def test_unterminated_quote_rejected(self, capsys, tmp_path):
        config = tmp_path / "policy.conf"
        config.write_text('field = "Fisheries\n', encoding="utf-8")
        code, _, err = run_cli(
            capsys, "--config", str(config), "--t", "1000", "--r", "0.5",
            "--authors", "3",
        )
        assert code == 2
        assert "unterminated quote" in err

    def test_env_var_fallback(self, capsys, tmp_path, monkeypatch):
        config = tmp_path / "policy.conf"
        config.write_text("t = 1200000\n", encoding="utf-8")
        monkeypatch.setenv("CREDIT_ALLOC_CONFIG", str(config))
        code, out, _ = run_cli(
            capsys, "--r", "0.24", "--authors", "3", "--scheme", "harmonic"
        )
        assert code == 0
        assert "576,000.00" in out

    def test_env_var_pointing_nowhere_is_ignored(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("CREDIT_ALLOC_CONFIG", str(tmp_path / "absent.conf"))
        code, _, err = run_cli(capsys, "--r", "0.24", "--authors", "3")
        assert code == 2
        assert "--t is required" in err

    def test_unknown_key_rejected(self, capsys, tmp_path):
        config = tmp_path / "policy.conf"
        config.write_text("bogus = 1\n", encoding="utf-8")
        code, _, err = run_cli(
            capsys, "--config", str(config), "--t", "1000", "--r", "0.5",
            "--authors", "3",
        )
        assert code == 2
        assert "unknown config key" in err

    def test_bad_syntax_rejected(self, capsys, tmp_path):
        config = tmp_path / "policy.conf"
        config.write_text("just some words\n", encoding="utf-8")
        code, _, err = run_cli(
            capsys, "--config", str(config), "--t", "1000", "--r", "0.5",
            "--authors", "3",
        )
        assert code == 2
        assert "expected key = value" in err

    def test_missing_explicit_config_rejected(self, capsys, tmp_path):
        code, _, err = run_cli(
            capsys, "--config", str(tmp_path / "absent.conf"), "--t", "1000",
            "--r", "0.5", "--authors", "3",
        )
        assert code == 2
        assert "cannot read config file" in err

    def test_bad_config_value_rejected(self, capsys, tmp_path):
        config = tmp_path / "policy.conf"
        config.write_text("t = lots\n", encoding="utf-8")
        code, _, err = run_cli(
            capsys, "--config", str(config), "--r", "0.5", "--authors", "3"
        )
        assert code == 2
        assert "config value" in err


class TestGrid:
    def test_shape_and_extremes(self, capsys):
        code, out, _ = run_cli(
            capsys, "grid", "--t", "1000000", "--p-steps", "11", "--r-steps", "10"
        )
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 12
        assert all(len(line.split(",")) == 11 for line in lines)
        cells = [
            float(cell)
            for line in lines[1:]
            for cell in line.split(",")[1:]
        ]
        assert max(cells) == 1_000_000.0

    def test_contains_midpoint_value(self, capsys):
        code, out, _ = run_cli(
            capsys, "grid", "--t", "1000000", "--p-steps", "3", "--r-steps", "2"
        )
        assert code == 0
        assert "750000" in out

    def test_nonpositive_t_exits_two(self, capsys):
        code, _, err = run_cli(
            capsys, "grid", "--t", "0", "--p-steps", "3", "--r-steps", "2"
        )
        assert code == 2
        assert "positive" in err

    def test_too_few_steps_exits_two(self, capsys):
        code, _, err = run_cli(
            capsys, "grid", "--t", "1000", "--p-steps", "1", "--r-steps", "5"
        )
        assert code == 2
        assert "at least 2" in err

    def test_missing_steps_exits_two(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["grid", "--t", "1000"])
        assert excinfo.value.code == 2

    def test_deterministic(self, capsys):
        argv = ("grid", "--t", "1000000", "--p-steps", "5", "--r-steps", "4")
        _, first, _ = run_cli(capsys, *argv)
        _, second, _ = run_cli(capsys, *argv)
        assert first == second
