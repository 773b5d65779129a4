import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from circhad.cli import main

SRC = Path(__file__).resolve().parent.parent / "src"
COUNTEREXAMPLE_BLOCKS = "++,+-,--,+-,--,+-"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    # --format must precede any "--" end-of-options marker
    code, out, err = run(capsys, argv[0], "--format", "json", *argv[1:])
    return code, json.loads(out), err


class TestVerify:
    def test_hadamard_sequence(self, capsys):
        code, doc, _ = run_json(capsys, "verify", "--", "-+++")
        assert code == 0
        assert doc["ok"] is True
        assert doc["result"]["paf_spectrum"] == [4, 0, 0, 0]
        assert doc["result"]["row_sum"] == 2

    def test_non_hadamard_sequence(self, capsys):
        code, doc, _ = run_json(capsys, "verify", "++++")
        assert code == 1
        assert doc["ok"] is False

    def test_parse_error(self, capsys):
        code, out, err = run(capsys, "verify", "+*+-")
        assert code == 2
        assert "invalid character" in err

    def test_corpus_file(self, capsys, tmp_path):
        corpus = tmp_path / "seqs.txt"
        corpus.write_text("-+++\n++++\n")
        code, doc, _ = run_json(capsys, "verify", "--file", str(corpus))
        assert code == 1
        flags = [e["is_circulant_hadamard"] for e in doc["result"]]
        assert flags == [True, False]

    def test_missing_input(self, capsys):
        code, _, err = run(capsys, "verify")
        assert code == 2


class TestPaf:
    def test_spectrum(self, capsys):
        code, doc, _ = run_json(capsys, "paf", "--", "-+++")
        assert code == 0
        assert doc["result"]["paf_spectrum"] == [4, 0, 0, 0]

    def test_single_lag(self, capsys):
        code, doc, _ = run_json(capsys, "paf", "++++", "--lag", "2")
        assert code == 0
        assert doc["result"]["value"] == 4

    def test_lag_out_of_range(self, capsys):
        code, _, err = run(capsys, "paf", "++++", "--lag", "4")
        assert code == 2


class TestDecompose:
    def test_order_four(self, capsys):
        code, doc, _ = run_json(capsys, "decompose", "--", "-+++")
        assert code == 0
        result = doc["result"]
        assert result["blocks"] == "-+,++"
        assert result["parities"] == ["Odd", "Even"]
        assert result["even_count"] == 1

    def test_constant(self, capsys):
        code, doc, _ = run_json(capsys, "decompose", "++++")
        assert doc["result"]["blocks"] == "++,++"
        assert doc["result"]["even_count"] == 2

    def test_bad_length(self, capsys):
        code, _, err = run(capsys, "decompose", "+-+")
        assert code == 2


class TestEqn1:
    def test_counterexample_lag_two(self, capsys):
        code, doc, _ = run_json(capsys, "eqn1", COUNTEREXAMPLE_BLOCKS, "--lag", "2")
        assert code == 1
        assert doc["result"]["residual"] == [[-2, -2], [-2, -2]]
        assert doc["ok"] is False

    def test_vacuous_n1(self, capsys):
        code, doc, _ = run_json(capsys, "eqn1", "--", "-+,++")
        assert code == 0
        assert doc["ok"] is True

    def test_all_lags(self, capsys):
        code, doc, _ = run_json(capsys, "eqn1", COUNTEREXAMPLE_BLOCKS)
        assert code == 1
        assert doc["result"]["holds"] is False
        nonzero = [r["lag"] for r in doc["result"]["residuals"] if not r["zero"]]
        assert 2 in nonzero

    def test_lag_out_of_range(self, capsys):
        code, _, _ = run(capsys, "eqn1", COUNTEREXAMPLE_BLOCKS, "--lag", "6")
        assert code == 2


class TestMatch:
    def test_find_at_lag(self, capsys):
        code, doc, _ = run_json(capsys, "match", COUNTEREXAMPLE_BLOCKS, "--lag", "2")
        assert code == 1
        entry = doc["result"]["lags"][0]
        assert entry["pairs"] == [[[0, 2], [2, 4]]]
        assert entry["unmatched"] == [[4, 0]]
        assert entry["perfect"] is False

    def test_validate_good_file(self, capsys, tmp_path):
        matchings = tmp_path / "m.txt"
        matchings.write_text("u=2: (0,2)~(2,4)\nu=4: (0,4)~(4,2)\n")
        code, doc, _ = run_json(
            capsys, "match", COUNTEREXAMPLE_BLOCKS, "--matchings", str(matchings)
        )
        assert code == 0
        assert doc["result"]["valid"] is True

    def test_validate_bad_file(self, capsys, tmp_path):
        matchings = tmp_path / "m.txt"
        matchings.write_text("u=2: (0,2)~(4,0)\n")
        code, doc, _ = run_json(
            capsys, "match", COUNTEREXAMPLE_BLOCKS, "--matchings", str(matchings)
        )
        assert code == 1
        assert doc["result"]["valid"] is False
        assert doc["result"]["violations"]


class TestChase:
    def test_counterexample_inputs(self, capsys, tmp_path):
        matchings = tmp_path / "m.txt"
        matchings.write_text("u=2: (0,2)~(2,4)\nu=4: (0,4)~(4,2)\n")
        code, doc, _ = run_json(
            capsys,
            "chase",
            COUNTEREXAMPLE_BLOCKS,
            "--matchings",
            str(matchings),
            "--start",
            "0,2",
        )
        assert code == 0
        trace = doc["result"]["trace"]
        assert trace["outcome"] == "Cycle"
        assert trace["steps"] == [
            {"obligation": [0, 2], "matched": [2, 4]},
            {"obligation": [0, 4], "matched": [4, 2]},
        ]
        assert trace["repeat"] == [0, 2]

    def test_empty_matchings_file(self, capsys, tmp_path):
        matchings = tmp_path / "empty.txt"
        matchings.write_text("\n")
        code, doc, _ = run_json(
            capsys,
            "chase",
            COUNTEREXAMPLE_BLOCKS,
            "--matchings",
            str(matchings),
            "--start",
            "0,2",
        )
        assert code == 1
        assert doc["result"]["trace"]["outcome"] == "MatchingUnavailable"

    def test_invalid_matchings_exit_two(self, capsys, tmp_path):
        matchings = tmp_path / "bad.txt"
        matchings.write_text("u=2: (0,2)~(4,0)\n")
        code, _, err = run(
            capsys,
            "chase",
            COUNTEREXAMPLE_BLOCKS,
            "--matchings",
            str(matchings),
            "--start",
            "0,2",
        )
        assert code == 2
        assert "not negatives" in err

    def test_bad_start_exit_two(self, capsys, tmp_path):
        matchings = tmp_path / "m.txt"
        matchings.write_text("u=2: (0,2)~(2,4)\n")
        code, _, err = run(
            capsys,
            "chase",
            COUNTEREXAMPLE_BLOCKS,
            "--matchings",
            str(matchings),
            "--start",
            "1,3",
        )
        assert code == 2
        assert "odd" in err


class TestCounterexampleCommand:
    def test_all_checks_pass(self, capsys):
        code, doc, _ = run_json(capsys, "counterexample")
        assert code == 0
        assert doc["ok"] is True
        assert [c["pass"] for c in doc["result"]["checks"]] == [True] * 4
        assert doc["result"]["even_indices"] == [0, 2, 4]
        assert doc["result"]["trace"]["outcome"] == "Cycle"
        assert len(doc["result"]["trace"]["steps"]) == 2

    def test_text_mode_prints_pass_lines(self, capsys):
        code, out, _ = run(capsys, "counterexample")
        assert code == 0
        assert out.count(": pass") == 4


class TestSearchCommand:
    def test_order_four(self, capsys):
        code, doc, _ = run_json(capsys, "search", "--order", "4")
        assert code == 0
        assert len(doc["result"]["solutions"]) == 8

    def test_order_twelve_rowsum_rejects(self, capsys):
        code, doc, _ = run_json(capsys, "search", "--order", "12")
        assert code == 0
        assert doc["result"]["solutions"] == []
        assert doc["result"]["sequences_examined"] == 0

    def test_bad_order(self, capsys):
        code, _, err = run(capsys, "search", "--order", "7")
        assert code == 2

    def test_budget_truncation_exit_one(self, capsys):
        code, doc, _ = run_json(capsys, "search", "--order", "16", "--budget-seconds", "0")
        assert code == 1
        assert doc["result"]["incomplete"] is True

    def test_prune_none(self, capsys):
        code, doc, _ = run_json(capsys, "search", "--order", "8", "--prune", "none")
        assert code == 0
        assert doc["result"]["sequences_examined"] == 128

    def test_prune_none_exclusive(self, capsys):
        code, _, err = run(
            capsys, "search", "--order", "8", "--prune", "none", "--prune", "row-sum"
        )
        assert code == 2


class TestJsonRoundTrip:
    @pytest.mark.parametrize(
        "argv",
        [
            ("verify", "--", "-+++"),
            ("paf", "++++"),
            ("decompose", "++++"),
            ("eqn1", COUNTEREXAMPLE_BLOCKS),
            ("match", COUNTEREXAMPLE_BLOCKS, "--lag", "2"),
            ("counterexample",),
            ("search", "--order", "4"),
        ],
    )
    def test_machine_output_reparses_identically(self, capsys, argv):
        main([argv[0], "--format", "json", *argv[1:]])
        out = capsys.readouterr().out
        doc = json.loads(out)
        assert json.dumps(doc, indent=2, sort_keys=True) == out.strip()


def test_console_entrypoint_subprocess():
    env = dict(os.environ, PYTHONPATH=str(SRC))
    proc = subprocess.run(
        [sys.executable, "-m", "circhad", "counterexample"],
        capture_output=True,
        text=True,
        env=env,
    )
    assert proc.returncode == 0
    assert "outcome: Cycle" in proc.stdout
