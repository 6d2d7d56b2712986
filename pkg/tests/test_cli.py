"""Tests for the Contrapunctus CLI."""

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from contrapunctus.main import cli


@pytest.fixture
def runner(monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> CliRunner:
    """A runner in an empty directory."""
    monkeypatch.chdir(tmp_path)
    return CliRunner()


def test_cli_version(runner: CliRunner) -> None:
    """Test that CLI shows version."""
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert "0.1.0" in result.output


def test_cli_help(runner: CliRunner) -> None:
    """Test the help command lists the subcommands."""
    result = runner.invoke(cli, ["--help"])
    assert result.exit_code == 0
    for command in ("enumerate", "classify", "model", "verdicts", "compare", "verify"):
        assert command in result.output


class TestEnumerate:
    """Tests for the enumerate commands."""

    def test_strict_summary(self, runner: CliRunner) -> None:
        result = runner.invoke(cli, ["enumerate", "strict", "--summary"])
        assert result.exit_code == 0
        lines = result.output.splitlines()
        assert lines[0] == "group,name,count"
        assert "total,total,1057" in lines
        assert "categories,bad,64" in lines
        assert "kinds,hidden tritones,26" in lines

    def test_strict_rows(self, runner: CliRunner) -> None:
        result = runner.invoke(cli, ["enumerate", "strict"])
        assert result.exit_code == 0
        lines = result.output.splitlines()
        assert lines[0] == "c,d,c_next,d_next,k,k_next,category,kind,violations"
        assert len(lines) == 1 + 1057

    def test_reduced_json(self, runner: CliRunner) -> None:
        result = runner.invoke(cli, ["enumerate", "reduced", "--format", "json"])
        assert result.exit_code == 0
        rows = [json.loads(line) for line in result.output.splitlines()]
        assert len(rows) == 287
        assert rows[0]["k"] == 0

    def test_reduced_summary_to_file(self, runner: CliRunner, tmp_path: Path) -> None:
        out = tmp_path / "reports" / "reduced.md"
        result = runner.invoke(
            cli, ["enumerate", "reduced", "--summary", "--format", "md", "--out", str(out)]
        )
        assert result.exit_code == 0
        text = out.read_text(encoding="utf-8")
        assert "| repetitions" in text
        assert "190" in text

    def test_table_format(self, runner: CliRunner) -> None:
        result = runner.invoke(cli, ["enumerate", "reduced", "--summary", "--format", "table"])
        assert result.exit_code == 0
        assert "Reduced style" in result.output


class TestClassify:
    """Tests for classify reduced."""

    def test_crosscheck(self, runner: CliRunner) -> None:
        result = runner.invoke(cli, ["classify", "reduced", "--crosscheck"])
        assert result.exit_code == 0
        assert "disagreements,0" in result.output.splitlines()
        assert "general parallel-5th,yes" in result.output.splitlines()


class TestModel:
    """Tests for the model command."""

    def test_single_consonance(self, runner: CliRunner) -> None:
        result = runner.invoke(cli, ["model", "--variant", "classical", "--k", "7"])
        assert result.exit_code == 0
        lines = result.output.splitlines()
        assert lines[0].startswith("k,variant,strategy,symmetries,score")
        assert lines[1].startswith("7,classical,local,")

    def test_all_summary(self, runner: CliRunner) -> None:
        result = runner.invoke(cli, ["model", "--all", "--summary", "--jobs", "2"])
        assert result.exit_code == 0
        lines = result.output.splitlines()
        assert lines[0] == "k,variant,strategy,score,successor_count"
        assert len(lines) == 7

    def test_dissonance(self, runner: CliRunner) -> None:
        result = runner.invoke(cli, ["model", "--k", "1"])
        assert result.exit_code == 1
        assert "not a consonance" in result.output

    def test_needs_k_or_all(self, runner: CliRunner) -> None:
        assert runner.invoke(cli, ["model"]).exit_code == 1
        assert runner.invoke(cli, ["model", "--k", "0", "--all"]).exit_code == 1

    def test_other_modulus(self, runner: CliRunner, tmp_path: Path) -> None:
        dichotomy = tmp_path / "z6.yaml"
        dichotomy.write_text("consonances: [0, 1, 3]\ndissonances: [2, 4, 5]\n", encoding="utf-8")
        result = runner.invoke(
            cli, ["model", "--all", "--n", "6", "--dichotomy", str(dichotomy), "--summary"]
        )
        assert result.exit_code == 0
        assert len(result.output.splitlines()) == 4

    def test_modulus_without_dichotomy(self, runner: CliRunner) -> None:
        result = runner.invoke(cli, ["model", "--all", "--n", "6"])
        assert result.exit_code == 1


class TestErrors:
    """Tests for exit codes."""

    def test_unknown_command(self, runner: CliRunner) -> None:
        assert runner.invoke(cli, ["counterpoint"]).exit_code == 1

    def test_bad_choice(self, runner: CliRunner) -> None:
        assert runner.invoke(cli, ["verdicts", "--variant", "baroque"]).exit_code == 1

    def test_bad_config(self, runner: CliRunner, tmp_path: Path) -> None:
        config = tmp_path / "run.yaml"
        config.write_text("jobs: 0\n", encoding="utf-8")
        result = runner.invoke(cli, ["--config", str(config), "enumerate", "strict"])
        assert result.exit_code == 1
        assert "invalid setting 'jobs'" in result.output


class TestGolden:
    """Tests for golden-file checks."""

    def test_update_then_match_then_drift(self, runner: CliRunner, tmp_path: Path) -> None:
        golden = tmp_path / "golden"
        args = ["enumerate", "strict", "--summary", "--golden", str(golden)]

        assert runner.invoke(cli, [*args, "--update-golden"]).exit_code == 0
        stored = golden / "strict-summary.csv"
        assert stored.exists()

        assert runner.invoke(cli, args).exit_code == 0

        stored.write_text("group,name,count\n", encoding="utf-8")
        assert runner.invoke(cli, args).exit_code == 2

    def test_missing_golden(self, runner: CliRunner, tmp_path: Path) -> None:
        result = runner.invoke(
            cli, ["enumerate", "reduced", "--summary", "--golden", str(tmp_path / "none")]
        )
        assert result.exit_code == 2


class TestVerify:
    """Tests for the verify command."""

    def test_selected_checks(self, runner: CliRunner) -> None:
        args = ["verify", "--check", "strict-table", "--check", "reduced-table"]
        result = runner.invoke(cli, args)
        assert result.exit_code == 0
        assert "strict-table" in result.output
        assert "All 2 checks passed" in result.output


@pytest.mark.slow
class TestSlowCommands:
    """Tests for commands that run full verdict tables."""

    def test_verdicts_summary(self, runner: CliRunner) -> None:
        result = runner.invoke(cli, ["verdicts", "--variant", "idempotent", "--summary"])
        assert result.exit_code == 0
        lines = result.output.splitlines()
        assert lines == ["verdict,count", "allowed,240", "forbidden,40", "non-polarized,7"]

    def test_compare_summary(self, runner: CliRunner) -> None:
        result = runner.invoke(
            cli, ["compare", "--variant", "classical", "--semantics", "starred", "--summary"]
        )
        assert result.exit_code == 0
        assert "classical,starred,222,42" in result.output.splitlines()
        assert "matches=222 mismatches=42" in result.output

    def test_compare_kinds(self, runner: CliRunner) -> None:
        result = runner.invoke(cli, ["compare", "--kinds"])
        assert result.exit_code == 0
        assert "parallel-5th,0,10,0" in result.output.splitlines()

    def test_compare_recovery(self, runner: CliRunner) -> None:
        result = runner.invoke(cli, ["compare", "--recovery", "--format", "json"])
        assert result.exit_code == 0
        assert '"rule": "parallel_prohibited"' in result.output

    def test_full_verify(self, runner: CliRunner) -> None:
        result = runner.invoke(cli, ["verify", "--jobs", "4"])
        assert result.exit_code == 0
        assert "All 13 checks passed" in result.output
