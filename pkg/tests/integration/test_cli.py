"""
Integration tests for the command-line interface
"""

import csv
import json

import pytest
from click.testing import CliRunner

from torn_codes.cli.main import cli
from torn_codes.core.config import TornCodesConfig

CFG_B = "q=2,n=289,lmin=31,lmax=45,f=3"


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(cli, list(args), obj={})


class TestPipeline:
    """Test encode, tear and decode through the CLI"""

    def test_round_trip(self, runner, temp_dir):
        """Test a one-byte message through the default code"""
        message = temp_dir / "message.bin"
        message.write_bytes(b"Z")
        codeword = temp_dir / "codeword.txt"
        segments = temp_dir / "segments.txt"
        decoded = temp_dir / "decoded.bin"

        result = invoke(runner, "encode", "--in", str(message), "--out", str(codeword))
        assert result.exit_code == 0, result.output
        result = invoke(
            runner, "tear", "--in", str(codeword), "--out", str(segments), "--seed", "7"
        )
        assert result.exit_code == 0, result.output
        result = invoke(
            runner, "decode", "--in", str(segments), "--out", str(decoded), "--length", "1"
        )
        assert result.exit_code == 0, result.output
        assert decoded.read_bytes() == b"Z"

    def test_substitution_round_trip(self, runner, temp_dir):
        """Test the robust code with a corrupted symbol"""
        message = temp_dir / "message.bin"
        message.write_bytes(b"torn!")
        codeword = temp_dir / "codeword.txt"
        segments = temp_dir / "segments.txt"
        decoded = temp_dir / "decoded.bin"
        robust = ["--params", CFG_B, "--model", "substitution", "--t", "1"]

        result = invoke(runner, "encode", *robust, "--in", str(message), "--out", str(codeword))
        assert result.exit_code == 0, result.output
        result = invoke(
            runner, "tear", "--in", str(codeword), "--out", str(segments), "--t-sub", "1"
        )
        assert result.exit_code == 0, result.output
        result = invoke(
            runner, "decode", *robust, "--in", str(segments), "--out", str(decoded), "--length", "5"
        )
        assert result.exit_code == 0, result.output
        assert decoded.read_bytes() == b"torn!"

    def test_missing_segment(self, runner, temp_dir):
        """Test that an incomplete segment file fails with the decode exit code"""
        message = temp_dir / "message.bin"
        message.write_bytes(b"Z")
        codeword = temp_dir / "codeword.txt"
        segments = temp_dir / "segments.txt"
        invoke(runner, "encode", "--in", str(message), "--out", str(codeword))
        invoke(
            runner, "tear", "--in", str(codeword), "--out", str(segments), "--strategy", "all_lmin"
        )
        lines = segments.read_text().splitlines()
        dropped = next(i for i, line in enumerate(lines) if len(line) == 15)
        segments.write_text("\n".join(lines[:dropped] + lines[dropped + 1 :]) + "\n")

        result = invoke(
            runner, "decode", "--in", str(segments), "--out", str(temp_dir / "out.bin")
        )
        assert result.exit_code == 3

    def test_oversized_message(self, runner, temp_dir):
        """Test that a message beyond capacity is a validation error"""
        message = temp_dir / "message.bin"
        message.write_bytes(b"too long")
        result = invoke(
            runner, "encode", "--in", str(message), "--out", str(temp_dir / "c.txt")
        )
        assert result.exit_code == 2

    def test_missing_input(self, runner, temp_dir):
        """Test that an absent input file is an I/O error"""
        result = invoke(
            runner, "encode", "--in", str(temp_dir / "absent"), "--out", str(temp_dir / "c.txt")
        )
        assert result.exit_code == 4


class TestExperiments:
    """Test the trial, sweep and bounds commands"""

    def test_trial(self, runner, temp_dir):
        """Test the JSON lines report"""
        out = temp_dir / "trials.jsonl"
        result = invoke(runner, "trial", "--trials", "3", "--seed", "10", "--out", str(out))
        assert result.exit_code == 0, result.output
        records = [json.loads(line) for line in out.read_text().splitlines()]
        assert [r["seed"] for r in records] == [10, 11, 12]
        assert all(r["success"] for r in records)

    def test_failed_trial_exit_code(self, runner):
        """Test that noise beyond the budget yields the decode exit code"""
        result = invoke(
            runner,
            "trial",
            "--params",
            CFG_B,
            "--model",
            "substitution",
            "--t",
            "1",
            "--noise",
            "6",
            "--target",
            "payload",
            "--trials",
            "5",
        )
        assert result.exit_code == 3
        assert "trials decoded exactly" in result.output

    def test_sweep_csv(self, runner, temp_dir):
        """Test the sweep CSV"""
        out = temp_dir / "sweep.csv"
        result = invoke(
            runner, "sweep", "--n", "124", "--lmin", "15", "--trials", "2", "--out", str(out)
        )
        assert result.exit_code == 0, result.output
        with open(out, newline="", encoding="utf-8") as handle:
            rows = list(csv.DictReader(handle))
        assert rows[0]["redundancy"] == "110"
        assert rows[0]["successes"] == "2"

    def test_bounds_json(self, runner, temp_dir):
        """Test the bounds report file"""
        out = temp_dir / "bounds.json"
        result = invoke(
            runner, "bounds", "--params", CFG_B, "--t", "1", "--format", "json", "--out", str(out)
        )
        assert result.exit_code == 0, result.output
        report = json.loads(out.read_text())
        names = {value["name"] for value in report["values"]}
        assert "implementation_red" in names
        assert report["schema"] == 1

    def test_invalid_params(self, runner):
        """Test that infeasible parameters are a validation error"""
        result = invoke(runner, "info", "--params", "q=2,n=124,lmin=20,lmax=15")
        assert result.exit_code == 2


class TestConfigCommands:
    """Test configuration commands"""

    def test_init_config(self, runner, temp_dir):
        """Test writing and reusing a configuration file"""
        path = temp_dir / "code.toml"
        result = invoke(
            runner,
            "init-config",
            str(path),
            "--params",
            CFG_B,
            "--model",
            "substitution",
            "--t",
            "1",
        )
        assert result.exit_code == 0, result.output
        config = TornCodesConfig.from_file(path)
        assert config.code.n == 289
        assert config.robust.t == 1

        result = invoke(runner, "info", "--config", str(path))
        assert result.exit_code == 0, result.output
        assert "289" in result.output

    def test_info_defaults(self, runner):
        """Test the derived parameter table"""
        result = invoke(runner, "info")
        assert result.exit_code == 0
        assert "message_len" in result.output
