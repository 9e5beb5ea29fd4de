"""Tests for the command-line surface."""

import json

from click.testing import CliRunner

from gcyclo.errors import EXIT_HYPOTHESIS, EXIT_OK, EXIT_PARAMETER
from gcyclo.main import cli
from gcyclo.routers.common import RunConfig
from gcyclo.services.lc_engine import parse_report_csv
from gcyclo.services.storage import StorageService

runner = CliRunner()


class TestGenerateCommand:
    """Test sequence generation."""

    def test_generate_p5(self, tmp_path):
        """(5, 1, 2) writes 11001."""
        output = tmp_path / "seq.bits"
        result = runner.invoke(cli, ["generate", "--p", "5", "--n", "1", "--e", "2", "--output", str(output)])
        assert result.exit_code == EXIT_OK
        assert "N=5 weight=3 params=5,1,2,0,2" in result.output
        assert output.read_text().splitlines()[-1] == "11001"

    def test_generate_p7(self, tmp_path):
        """(7, 1, 3) writes 1110100."""
        output = tmp_path / "seq.bits"
        result = runner.invoke(cli, ["generate", "--p", "7", "--n", "1", "--e", "3", "--output", str(output)])
        assert result.exit_code == EXIT_OK
        assert output.read_text().splitlines()[-1] == "1110100"

    def test_generate_json_and_classes(self, tmp_path):
        """JSON output reloads; the class dump is written alongside."""
        output = tmp_path / "seq.json"
        classes = tmp_path / "classes.json"
        result = runner.invoke(
            cli,
            ["generate", "--p", "5", "--n", "2", "--e", "2", "--b", "3", "--format", "json",
             "--output", str(output), "--dump-classes", str(classes)],
        )
        assert result.exit_code == EXIT_OK
        seq = StorageService(tmp_path).load_sequence(output)
        assert seq.period == 25
        assert seq.weight == 13
        assert seq.params.b == 3
        assert "c1" in json.loads(classes.read_text())

    def test_bad_prime(self):
        """p = 4 exits 2 with a diagnostic."""
        result = runner.invoke(cli, ["generate", "--p", "4", "--n", "1", "--e", "1"])
        assert result.exit_code == EXIT_PARAMETER
        assert "p must be an odd prime" in result.output

    def test_missing_parameter(self):
        """--n is required for single-tuple commands."""
        result = runner.invoke(cli, ["measure", "--p", "5", "--e", "2"])
        assert result.exit_code == EXIT_PARAMETER
        assert "--n is required for measure" in result.output

    def test_period_cap(self, tmp_path):
        """Periods above --cap-period are refused."""
        result = runner.invoke(
            cli,
            ["generate", "--p", "5", "--n", "2", "--e", "2", "--cap-period", "10",
             "--output", str(tmp_path / "seq.bits")],
        )
        assert result.exit_code == EXIT_PARAMETER
        assert "Error:" in result.output


class TestComplexityCommands:
    """Test predict, measure, verify and identities."""

    def test_predict(self):
        """(7, 2, 3) predicts 46."""
        result = runner.invoke(cli, ["predict", "--p", "7", "--n", "2", "--e", "3"])
        assert result.exit_code == EXIT_OK
        report = json.loads(result.output)
        assert report["predicted"] == 46
        assert report["branch"] == "2 in D0"

    def test_predict_wieferich(self):
        """1093 violates the hypothesis."""
        result = runner.invoke(cli, ["predict", "--p", "1093", "--n", "1", "--e", "546"])
        assert result.exit_code == EXIT_HYPOTHESIS
        assert "1093" in result.output

    def test_measure_json(self):
        """(5, 2, 2, b=3) measures 25 three ways."""
        result = runner.invoke(cli, ["measure", "--p", "5", "--n", "2", "--e", "2", "--b", "3"])
        assert result.exit_code == EXIT_OK
        report = json.loads(result.output)
        assert report["measured_bm"] == report["measured_gcd"] == report["measured_roots"] == 25
        assert report["agree"] is True

    def test_measure_csv_saved(self, tmp_path):
        """CSV output can also be saved."""
        output = tmp_path / "report.csv"
        result = runner.invoke(
            cli,
            ["measure", "--p", "7", "--n", "2", "--e", "3", "--method", "bm", "--format", "csv",
             "--output", str(output)],
        )
        assert result.exit_code == EXIT_OK
        row = parse_report_csv(result.output)[0]
        assert row["bm"] == 46
        assert row["gcd"] is None
        assert parse_report_csv(output.read_text()) == [row]

    def test_measure_bad_generator(self):
        """A non-primitive g exits 2."""
        result = runner.invoke(cli, ["measure", "--p", "5", "--n", "1", "--e", "2", "--g", "4"])
        assert result.exit_code == EXIT_PARAMETER
        result = runner.invoke(cli, ["measure", "--p", "5", "--n", "1", "--e", "2", "--g", "two"])
        assert result.exit_code == EXIT_PARAMETER

    def test_verify_grid(self):
        """p <= 17, n <= 2: every row agrees."""
        result = runner.invoke(cli, ["verify", "--p-max", "17", "--n-max", "2"])
        assert result.exit_code == EXIT_OK
        rows = parse_report_csv(result.output)
        assert rows
        assert all(row["agree"] for row in rows)
        assert {row["p"] for row in rows} == {3, 5, 7, 11, 13, 17}

    def test_verify_all_b(self):
        """--all-b over p <= 7 gives ten rows."""
        result = runner.invoke(cli, ["verify", "--p-max", "7", "--all-b", "--method", "bm"])
        assert result.exit_code == EXIT_OK
        assert len(parse_report_csv(result.output)) == 10

    def test_verify_empty(self):
        """An empty grid is not an error."""
        result = runner.invoke(cli, ["verify", "--p-max", "2"])
        assert result.exit_code == EXIT_OK
        assert "no parameters in range" in result.output

    def test_identities(self):
        """Every counted family holds for (7, 2, 3)."""
        result = runner.invoke(cli, ["identities", "--p", "7", "--n", "2", "--e", "3", "--sample-budget", "500"])
        assert result.exit_code == EXIT_OK
        report = json.loads(result.output)
        assert report["all_passed"] is True
        assert {f["name"] for f in report["families"]} >= {"complement", "shift", "frobenius"}

    def test_identities_degree_cap(self):
        """Fields above --cap-degree are refused."""
        result = runner.invoke(cli, ["identities", "--p", "5", "--n", "3", "--e", "2", "--cap-degree", "50"])
        assert result.exit_code == EXIT_PARAMETER


class TestWieferichCommand:
    """Test the Wieferich scan."""

    def test_below_5000(self):
        """1093 and 3511, one per line."""
        result = runner.invoke(cli, ["wieferich", "--limit", "5000"])
        assert result.exit_code == EXIT_OK
        assert result.output.split() == ["1093", "3511"]

    def test_empty_scans(self):
        """Nothing below 1000, and nothing at the smallest limit."""
        for limit in ("1000", "3"):
            result = runner.invoke(cli, ["wieferich", "--limit", limit])
            assert result.exit_code == EXIT_OK
            assert result.output == ""

    def test_limit_too_small(self):
        """Limits below 3 exit 2."""
        result = runner.invoke(cli, ["wieferich", "--limit", "2"])
        assert result.exit_code == EXIT_PARAMETER


class TestApplication:
    """Test the command group."""

    def test_version(self):
        """--version prints the configured version."""
        result = runner.invoke(cli, ["--version"])
        assert result.exit_code == EXIT_OK
        assert "gcyclo" in result.output

    def test_commands_registered(self):
        """Every command shows up in --help."""
        result = runner.invoke(cli, ["--help"])
        for name in ("generate", "predict", "measure", "verify", "identities", "wieferich"):
            assert name in result.output

    def test_run_config_validation(self):
        """All problems are reported together."""
        errors = RunConfig(command="verify").validate_inputs()
        assert "--p-max must be a positive integer" in errors
        assert "--n-max must be a positive integer" in errors
        assert RunConfig(command="predict", p=5, n=1, e=2).validate_inputs() == []
        assert RunConfig(command="measure", p=5, n=1, e=2, workers=0).validate_inputs() == ["--workers must be at least 1"]
