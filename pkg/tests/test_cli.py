"""CLI: exit codes, document schema, byte stability, format parity."""

import json
import math
import re

import pytest

from vqpu import cli
from vqpu.resolution import DEFAULT_HUBBLE, PLANCK_H

from conftest import BELL_SOURCE, CONDITIONAL_SOURCE

WALL_TIME_LINE = re.compile(r'^\s*"wall_time_ms": .*$', re.MULTILINE)


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def doc_of(out):
    return json.loads(out)


@pytest.fixture
def bell_file(tmp_path):
    path = tmp_path / "bell.qasm"
    path.write_text(BELL_SOURCE)
    return str(path)


@pytest.fixture
def bad_file(tmp_path):
    path = tmp_path / "bad.qasm"
    path.write_text("OPENQASM 2.0;\nqreg q[1];\nh q[3];\n")
    return str(path)


class TestResolve:
    def test_gigahertz_reaches_ninety_bits(self, capsys):
        code, out, _ = run_cli(capsys, "resolve", "--frequency", "1e9")
        assert code == 0
        doc = doc_of(out)
        assert doc["schema_version"] == "1"
        assert doc["command"] == "resolve"
        assert 88 <= doc["result"]["min_bits"] <= 91
        assert doc["inputs"]["hubble_per_s"] == DEFAULT_HUBBLE

    def test_ground_state(self, capsys):
        gap = PLANCK_H * DEFAULT_HUBBLE
        code, out, _ = run_cli(capsys, "resolve", "--delta-e", repr(gap))
        assert code == 0
        doc = doc_of(out)
        assert doc["result"]["min_bits"] == 0
        assert doc["result"]["quanta_count"] == pytest.approx(1.0)

    def test_conflicting_flags_exit_2(self, capsys):
        with pytest.raises(SystemExit) as info:
            cli.main(["resolve", "--frequency", "1e9", "--delta-e", "1"])
        assert info.value.code == 2

    def test_non_positive_exit_2(self, capsys):
        code, out, _ = run_cli(capsys, "resolve", "--frequency", "-5")
        assert code == 2
        assert doc_of(out)["result"]["diagnostics"]

    def test_custom_hubble(self, capsys):
        code, out, _ = run_cli(capsys, "resolve", "--frequency", "2", "--hubble", "1")
        doc = doc_of(out)
        assert doc["result"]["quanta_count"] == pytest.approx(2.0)
        assert doc["result"]["min_bits"] == 1

    def test_text_format_same_numbers(self, capsys):
        _, json_out, _ = run_cli(capsys, "resolve", "--frequency", "1e9")
        _, text_out, _ = run_cli(capsys, "resolve", "--frequency", "1e9",
                                 "--format", "text")
        doc = doc_of(json_out)
        assert f"min_bits: {doc['result']['min_bits']}" in text_out
        quanta_text = [l for l in text_out.splitlines() if l.startswith("quanta_count")]
        assert quanta_text[0].split(": ")[1] == f"{doc['result']['quanta_count']:.17g}"


class TestRun:
    def test_bell_aqic_distribution(self, capsys, bell_file):
        code, out, _ = run_cli(capsys, "run", bell_file, "--mode", "aqic")
        assert code == 0
        doc = doc_of(out)
        assert doc["result"]["exact_distribution"] == pytest.approx([0.5, 0, 0, 0.5])
        assert doc["result"]["histogram"] is None
        assert doc["backend_id"] == "vqpu0"

    def test_sampled_histogram_keys_and_order(self, capsys, bell_file):
        code, out, _ = run_cli(
            capsys, "run", bell_file, "--shots", "4000", "--seed", "42"
        )
        assert code == 0
        doc = doc_of(out)
        hist = doc["result"]["histogram"]
        assert all(re.fullmatch(r"[01]+", k) for k in hist)
        counts = list(hist.values())
        assert counts == sorted(counts, reverse=True)
        assert sum(counts) == 4000
        assert doc["seed_used"] == 42

    def test_dual_mode_divergence(self, capsys, bell_file):
        code, out, _ = run_cli(
            capsys, "run", bell_file, "--shots", "20000", "--seed", "42",
            "--mode", "dual",
        )
        doc = doc_of(out)
        assert code == 0
        assert doc["result"]["divergence"] <= 0.02

    def test_bad_file_exit_2_with_positions(self, capsys, bad_file):
        code, out, _ = run_cli(capsys, "run", bad_file)
        assert code == 2
        diags = doc_of(out)["result"]["diagnostics"]
        assert diags[0]["code"] == "index-out-of-range"
        assert diags[0]["line"] == 3
        assert diags[0]["column"] >= 1

    def test_missing_file_exit_1(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "run", str(tmp_path / "absent.qasm"))
        assert code == 1
        assert err

    def test_init_angles_flip_outcome(self, capsys, tmp_path):
        path = tmp_path / "measure.qasm"
        path.write_text("OPENQASM 2.0; qreg q[1]; creg c[1]; measure q[0] -> c[0];")
        code, out, _ = run_cli(
            capsys, "run", str(path), "--init", f"{math.pi},0", "--mode", "aqic"
        )
        assert code == 0
        dist = doc_of(out)["result"]["exact_distribution"]
        assert dist[1] == pytest.approx(1.0)

    def test_bad_init_exit_2(self, capsys, bell_file):
        code, out, _ = run_cli(capsys, "run", bell_file, "--init", "1.0")
        assert code == 2
        assert doc_of(out)["result"]["diagnostics"][0]["code"] == "invalid-flag"

    def test_bad_precision_exit_2(self, capsys, bell_file):
        code, out, _ = run_cli(capsys, "run", bell_file, "--precision", "fixed:99")
        assert code == 2

    def test_zero_shots_exit_2(self, capsys, bell_file):
        code, out, _ = run_cli(capsys, "run", bell_file, "--shots", "0")
        assert code == 2
        assert doc_of(out)["result"]["diagnostics"][0]["code"] == "invalid-flag"

    def test_fixed_precision_runs(self, capsys, bell_file):
        code, out, _ = run_cli(
            capsys, "run", bell_file, "--precision", "fixed:16", "--mode", "aqic"
        )
        assert code == 0
        dist = doc_of(out)["result"]["exact_distribution"]
        assert dist[0] == pytest.approx(0.5, abs=1e-4)

    def test_capability_error_exit_2(self, capsys, tmp_path):
        path = tmp_path / "cond.qasm"
        path.write_text(CONDITIONAL_SOURCE)
        code, out, _ = run_cli(
            capsys, "run", str(path), "--backend", "reference-oracle",
            "--seed", "1",
        )
        assert code == 2
        assert doc_of(out)["result"]["diagnostics"][0]["code"] == "capability"

    def test_unseeded_run_reports_generated_seed(self, capsys, bell_file, monkeypatch):
        monkeypatch.delenv(cli.ENV_SYSTEM_ENTROPY, raising=False)
        code, out, _ = run_cli(capsys, "run", bell_file, "--shots", "16")
        doc = doc_of(out)
        assert code == 0
        assert isinstance(doc["seed_used"], int)

    def test_system_entropy_env_leaves_seed_null(self, capsys, bell_file, monkeypatch):
        monkeypatch.setenv(cli.ENV_SYSTEM_ENTROPY, "1")
        code, out, _ = run_cli(capsys, "run", bell_file, "--shots", "16")
        doc = doc_of(out)
        assert code == 0
        assert doc["seed_used"] is None

    def test_seed_flag_beats_entropy_env(self, capsys, bell_file, monkeypatch):
        monkeypatch.setenv(cli.ENV_SYSTEM_ENTROPY, "1")
        _, out, _ = run_cli(capsys, "run", bell_file, "--shots", "16", "--seed", "5")
        assert doc_of(out)["seed_used"] == 5

    def test_backend_env_override_and_flag_precedence(self, capsys, bell_file, monkeypatch):
        monkeypatch.setenv(cli.ENV_BACKEND, "reference-oracle")
        _, out, _ = run_cli(capsys, "run", bell_file, "--seed", "1", "--shots", "32")
        assert doc_of(out)["backend_id"] == "reference-oracle"
        _, out, _ = run_cli(capsys, "run", bell_file, "--seed", "1", "--shots", "32",
                            "--backend", "vqpu0")
        assert doc_of(out)["backend_id"] == "vqpu0"

    def test_unknown_backend_exit_2(self, capsys, bell_file):
        code, out, _ = run_cli(capsys, "run", bell_file, "--backend", "ghost")
        assert code == 2

    def test_byte_stability_modulo_wall_time(self, capsys, bell_file):
        args = ("run", bell_file, "--shots", "512", "--seed", "13")
        _, first, _ = run_cli(capsys, *args)
        _, second, _ = run_cli(capsys, *args)
        assert WALL_TIME_LINE.sub("", first) == WALL_TIME_LINE.sub("", second)

    def test_text_format_matches_json_numbers(self, capsys, bell_file):
        args_common = (bell_file, "--shots", "256", "--seed", "2")
        _, json_out, _ = run_cli(capsys, "run", *args_common)
        _, text_out, _ = run_cli(capsys, "run", *args_common, "--format", "text")
        hist = doc_of(json_out)["result"]["histogram"]
        for key, count in hist.items():
            assert f"{key} {count}" in text_out

    def test_text_mode_diagnostics_on_stderr(self, capsys, bad_file):
        code, out, err = run_cli(capsys, "run", bad_file, "--format", "text")
        assert code == 2
        assert "index-out-of-range" in err
        assert "index-out-of-range" not in out


class TestValidate:
    def test_valid_file(self, capsys, bell_file):
        code, out, _ = run_cli(capsys, "validate", bell_file)
        assert code == 0
        assert doc_of(out)["result"]["diagnostics"] == []

    def test_two_errors_in_position_order(self, capsys, tmp_path):
        path = tmp_path / "two.qasm"
        path.write_text("OPENQASM 2.0;\nqreg q[1];\nh q[3];\ncx q[0];\n")
        code, out, _ = run_cli(capsys, "validate", str(path))
        assert code == 2
        diags = doc_of(out)["result"]["diagnostics"]
        assert len(diags) == 2
        assert (diags[0]["line"], diags[0]["column"]) < (diags[1]["line"], diags[1]["column"])

    def test_missing_file_exit_1(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "validate", str(tmp_path / "nope.qasm"))
        assert code == 1

    def test_text_mode(self, capsys, bell_file):
        code, out, err = run_cli(capsys, "validate", bell_file, "--format", "text")
        assert code == 0
        assert "valid" in out


class TestDocumentShape:
    def test_run_document_key_order(self, capsys, bell_file):
        _, out, _ = run_cli(capsys, "run", bell_file, "--seed", "1", "--shots", "16")
        doc = doc_of(out)
        assert list(doc) == [
            "schema_version",
            "command",
            "inputs",
            "result",
            "seed_used",
            "backend_id",
            "wall_time_ms",
        ]

    def test_floats_use_17_significant_digits(self, capsys):
        _, out, _ = run_cli(capsys, "resolve", "--frequency", "1e9")
        quanta = 1e9 / DEFAULT_HUBBLE
        assert f"{quanta:.17g}" in out
