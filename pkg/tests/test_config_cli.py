"""Configuration parsing, command execution, emission, and exit codes."""

import csv
import io
import json
from fractions import Fraction

import pytest

from fiscal_duel import Regime, parse_config
from fiscal_duel.cli import (
    EXIT_INPUT,
    EXIT_MISMATCH,
    EXIT_OK,
    emit_rows,
    main,
    run_command,
)
from fiscal_duel.errors import MissingField, ParseError, ProbabilityRange

MINIMAL = "r_low = 40\nr_high = 70\nq = 0.4\n"

FULL = """
r_low = 40
r_high = 70
q = 0.4
t2_selection = 0
seed = 7

[taxes]
g1 = 40
g2 = 55

[regime]
j1 = "bargain"
j2 = "post"

[oracle]
grid_step = 0.5
deltas = [0.9, 0.99, 0.999]

[output]
format = "jsonl"
"""


class TestParseConfig:
    def test_minimal_defaults(self):
        cfg = parse_config(MINIMAL)
        assert (cfg.params.r_low, cfg.params.r_high, cfg.params.q) == (40, 70, 0.4)
        assert cfg.oracle.grid_step == pytest.approx(0.2)
        assert cfg.oracle.delta_schedule.deltas == (0.9, 0.99, 0.999)
        assert cfg.taxes is None
        assert cfg.output.format == "csv"
        assert cfg.arithmetic == "float"

    def test_full_document(self):
        cfg = parse_config(FULL)
        assert cfg.taxes.g1 == 40 and cfg.taxes.g2 == 55
        assert cfg.regime_profile.j1 is Regime.BARGAIN
        assert cfg.regime_profile.j2 is Regime.POST
        assert cfg.oracle.grid_step == 0.5
        assert cfg.seed == 7

    def test_invalid_probability(self):
        with pytest.raises(ProbabilityRange):
            parse_config("r_low = 40\nr_high = 70\nq = 1.3\n")

    def test_unknown_key_rejected(self):
        with pytest.raises(ParseError):
            parse_config(MINIMAL + "g3 = 10\n")
        with pytest.raises(ParseError):
            parse_config(MINIMAL + "[taxes]\ng1 = 1\ng2 = 2\ng3 = 3\n")

    def test_malformed_document(self):
        with pytest.raises(ParseError):
            parse_config("r_low = = 40")

    def test_missing_required(self):
        with pytest.raises(ParseError):
            parse_config("r_low = 40\nr_high = 70\n")

    def test_rational_mode(self):
        cfg = parse_config('arithmetic = "rational"\n' + MINIMAL)
        assert cfg.params.q == Fraction(2, 5)
        assert isinstance(cfg.params.r_low, Fraction)

    def test_sweep_ranges(self):
        cfg = parse_config(MINIMAL + "[sweep.g2]\nstart = 40\nstop = 60\nstep = 5\n")
        assert cfg.sweep["g2"].values() == [40, 45, 50, 55, 60]

    def test_bad_sweep_step(self):
        with pytest.raises(ParseError):
            parse_config(MINIMAL + "[sweep.g2]\nstart = 40\nstop = 60\nstep = 0\n")


class TestRunCommands:
    def test_solve_row(self):
        cfg = parse_config(FULL)
        status, rows = run_command(cfg, "solve")
        assert status == EXIT_OK
        (row,) = rows
        assert row["expected_welfare"] == pytest.approx(46)
        assert row["stage2_regime"] is Regime.BARGAIN

    def test_solve_reports_stage2_conflict(self):
        cfg = parse_config(FULL.replace("g2 = 55", "g2 = 60"))
        _, (row,) = run_command(cfg, "solve")
        assert row["stage2_regime"] is Regime.POST
        assert row["stage2_welfare"] == pytest.approx(24)

    def test_solve_requires_taxes(self):
        cfg = parse_config(MINIMAL + '[regime]\nj1 = "post"\nj2 = "post"\n')
        with pytest.raises(MissingField):
            run_command(cfg, "solve")

    def test_sweep_rows_in_grid_order(self):
        cfg = parse_config(
            FULL + "\n[sweep.g2]\nstart = 41\nstop = 55\nstep = 7\n"
        )
        status, rows = run_command(cfg, "sweep")
        assert status == EXIT_OK
        assert [r["g2"] for r in rows] == [41, 48, 55]

    def test_scenarios_row(self):
        cfg = parse_config(MINIMAL)
        status, rows = run_command(cfg, "scenarios")
        assert status == EXIT_OK
        (row,) = rows
        assert row["scenario_i"] == pytest.approx(46)
        assert row["scenario_iii"] == pytest.approx(40)
        assert row["local_only"] == 0
        assert row["prop2_holds"] and row["prop2_strict"]

    def test_verify_all_matched(self):
        cfg = parse_config(FULL)
        status, rows = run_command(cfg, "verify")
        assert status == EXIT_OK
        assert {r["check"] for r in rows} >= {
            "grid_nash_posting",
            "grid_stackelberg_bp",
            "grid_optimal_central",
        }
        assert all(r["matched"] for r in rows)

    def test_verify_battery(self):
        cfg = parse_config(FULL + "\n[verify]\nbattery_points = 2\n")
        status, rows = run_command(cfg, "verify")
        assert status == EXIT_OK
        assert sum("battery" in r["check"] for r in rows) == 4

    def test_report_long_format(self):
        cfg = parse_config(FULL.replace('grid_step = 0.5', 'grid_step = 5'))
        status, rows = run_command(cfg, "report")
        assert status == EXIT_OK
        series = {r["series"] for r in rows}
        assert "welfare_realized" in series
        assert "regime_boundary_g2" in series
        boundary = [r for r in rows if r["series"] == "regime_boundary_g2"]
        assert boundary[0]["value"] == pytest.approx(55)


class TestEmission:
    def test_csv_round_trip_full_precision(self):
        cfg = parse_config(FULL)
        _, rows = run_command(cfg, "solve")
        buf = io.StringIO()
        emit_rows(rows, "csv", buf)
        buf.seek(0)
        parsed = list(csv.DictReader(buf))
        assert len(parsed) == 1
        for key in ("expected_welfare", "expected_j1", "high_tax", "q"):
            assert float(parsed[0][key]) == float(rows[0][key])

    def test_jsonl_round_trip(self):
        cfg = parse_config(FULL)
        _, rows = run_command(cfg, "scenarios")
        buf = io.StringIO()
        emit_rows(rows, "jsonl", buf)
        parsed = json.loads(buf.getvalue().splitlines()[0])
        assert parsed["scenario_i"] == rows[0]["scenario_i"]
        assert parsed["prop2_holds"] is True

    def test_rational_cells_are_exact_text(self):
        cfg = parse_config('arithmetic = "rational"\n' + FULL)
        _, rows = run_command(cfg, "scenarios")
        buf = io.StringIO()
        emit_rows(rows, "jsonl", buf)
        parsed = json.loads(buf.getvalue().splitlines()[0])
        assert Fraction(parsed["central_only_bargaining"]) == Fraction(26)


class TestCliMain:
    def test_end_to_end_solve(self, tmp_path, capsys):
        conf = tmp_path / "run.toml"
        conf.write_text(FULL)
        out = tmp_path / "rows.csv"
        code = main(["solve", "--config", str(conf), "--out", str(out), "--format", "csv"])
        assert code == EXIT_OK
        text = out.read_text()
        assert "expected_welfare" in text
        assert "46.0" in text

    def test_input_error_exit_code(self, tmp_path, capsys):
        conf = tmp_path / "bad.toml"
        conf.write_text("r_low = 40\nr_high = 70\nq = 1.3\n")
        assert main(["scenarios", "--config", str(conf)]) == EXIT_INPUT
        assert "error" in capsys.readouterr().err

    def test_unknown_key_exit_code(self, tmp_path, capsys):
        conf = tmp_path / "bad.toml"
        conf.write_text(MINIMAL + "g3 = 1\n")
        assert main(["solve", "--config", str(conf)]) == EXIT_INPUT

    def test_missing_config_file(self, capsys):
        assert main(["solve", "--config", "/nonexistent.toml"]) == EXIT_INPUT

    def test_grid_step_override(self, tmp_path, capsys):
        conf = tmp_path / "run.toml"
        conf.write_text(MINIMAL)
        code = main(["scenarios", "--config", str(conf), "--grid-step", "1.0"])
        assert code == EXIT_OK
        assert "scenario_i" in capsys.readouterr().out

    def test_sweep_hitting_invalid_point_is_input_error(self, tmp_path, capsys):
        conf = tmp_path / "run.toml"
        conf.write_text(
            FULL + "\n[sweep.r_high]\nstart = 30\nstop = 50\nstep = 10\n"
        )
        assert main(["sweep", "--config", str(conf)]) == EXIT_INPUT

    def test_verify_mismatch_exit_code(self, tmp_path, capsys, monkeypatch):
        import fiscal_duel.cli as cli_mod
        from fiscal_duel.oracle import OracleReport

        def fake_nash(p, g, cfg):
            return OracleReport(
                matched=False,
                closed_form=None,
                oracle_value=None,
                max_discrepancy=9.9,
                equilibrium_multiplicity=1,
            )

        monkeypatch.setattr(cli_mod, "grid_nash_posting", fake_nash)
        conf = tmp_path / "run.toml"
        conf.write_text(FULL)
        assert main(["verify", "--config", str(conf)]) == EXIT_MISMATCH

    def test_rational_solve_emits_exact_cells(self, tmp_path, capsys):
        conf = tmp_path / "run.toml"
        conf.write_text('arithmetic = "rational"\n' + FULL.replace("q = 0.4", "q = 0.1"))
        code = main(["solve", "--config", str(conf), "--format", "jsonl"])
        assert code == EXIT_OK
        row = json.loads(capsys.readouterr().out.splitlines()[0])
        assert Fraction(row["q"]) == Fraction(1, 10)
        assert Fraction(row["expected_welfare"]) == Fraction(
            1, 10
        ) * 55 + Fraction(9, 10) * 40
