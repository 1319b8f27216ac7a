"""End-to-end command-line behavior: golden outputs and exit codes."""

import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from tlbox.cli import RunConfig, main
from tlbox.serialization import element_from_document, element_to_document

REPO = Path(__file__).parent.parent
GRAPHS = REPO / "demos" / "graphs"
ELEMENTS = REPO / "demos" / "elements"


def run(capsys, *args):
    code = main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestRunConfig:
    def test_defaults(self):
        config = RunConfig()
        assert config.delta_mode == "symbolic"
        assert config.numeric_delta is None
        assert config.output_format == "text"

    def test_validation(self):
        with pytest.raises(ValueError):
            RunConfig(output_format="yaml")
        with pytest.raises(ValueError):
            RunConfig(max_degree=6)
        with pytest.raises(ValueError):
            RunConfig(max_degree=0)
        with pytest.raises(ValueError):
            RunConfig(delta_mode=-2.0)
        with pytest.raises(ValueError):
            RunConfig(delta_mode=float("inf"))
        assert RunConfig(delta_mode=2.0).numeric_delta == 2.0


class TestMeander:
    def test_json_golden(self, capsys):
        code, out, _ = run(capsys, "meander", "--n", "2", "--format", "json")
        assert code == 0
        assert out == '{"n":2,"counts":{"1":2,"2":2},"polynomial":"2*q + 2*q^2"}\n'

    def test_json_order_four(self, capsys):
        code, out, _ = run(capsys, "meander", "--n", "4", "--format", "json")
        assert code == 0
        assert out == (
            '{"n":4,"counts":{"1":42,"2":84,"3":56,"4":14},'
            '"polynomial":"42*q + 84*q^2 + 56*q^3 + 14*q^4"}\n'
        )

    def test_text_golden(self, capsys):
        code, out, _ = run(capsys, "meander", "--n", "2")
        assert code == 0
        assert out == (
            "meander order 2\n"
            "1 loop: 2\n"
            "2 loops: 2\n"
            "polynomial: 2*q + 2*q^2\n"
        )

    def test_csv_golden(self, capsys):
        code, out, _ = run(capsys, "meander", "--n", "3", "--format", "csv")
        assert code == 0
        assert out == "loops,count\n1,8\n2,12\n3,5\n"


class TestTrace:
    def test_symbolic_text(self, capsys):
        code, out, _ = run(
            capsys, "trace", "--element", str(ELEMENTS / "powers.json"), "--n", "3"
        )
        assert code == 0
        assert out == (
            "tau(x^1) = 3*d + 3*d^2\n"
            "tau(x^2) = 29*d + 54*d^2 + 34*d^3 + 9*d^4\n"
            "tau(x^3) = 347*d + 1013*d^2 + 1210*d^3 + 742*d^4 + 225*d^5"
            " + 27*d^6\n"
        )

    def test_numeric_json(self, capsys):
        code, out, _ = run(
            capsys,
            "trace",
            "--element",
            str(ELEMENTS / "powers.json"),
            "--n",
            "3",
            "--delta",
            "2.0",
            "--format",
            "json",
        )
        assert code == 0
        document = json.loads(out)
        assert document["moments"] == [18.0, 690.0, 35226.0]

    def test_symbolic_csv(self, capsys):
        code, out, _ = run(
            capsys,
            "trace",
            "--element",
            str(ELEMENTS / "powers.json"),
            "--n",
            "1",
            "--format",
            "csv",
        )
        assert code == 0
        assert out == "k,moment\n1,3*d + 3*d^2\n"


class TestIndex:
    def test_a3_table_golden(self, capsys):
        code, out, _ = run(
            capsys, "index", "--graph", str(GRAPHS / "a3.json"), "--k", "0"
        )
        assert code == 0
        assert out == (
            "vertex  parity  dim\n"
            "*       even    1\n"
            "a       odd     1.41421\n"
            "b       even    1\n"
            "delta = 1.41421\n"
            "I = 2, r_0 = 2.65685\n"
        )

    def test_a4_json_values(self, capsys):
        code, out, _ = run(
            capsys,
            "index",
            "--graph",
            str(GRAPHS / "a4.json"),
            "--k",
            "1",
            "--format",
            "json",
        )
        assert code == 0
        document = json.loads(out)
        phi = (1 + 5**0.5) / 2
        assert abs(document["delta"] - phi) < 1e-9
        assert abs(document["index"] - (1 + phi * phi)) < 1e-9
        assert not document["infinite"]
        r0 = document["r"]["0"]
        assert abs(r0 - (1 + 2 * document["index"] * (document["delta"] - 1))) < 1e-9

    def test_infinite_graph(self, capsys):
        code, out, _ = run(
            capsys,
            "index",
            "--graph",
            str(GRAPHS / "free_truncation.json"),
            "--format",
            "json",
        )
        assert code == 0
        document = json.loads(out)
        assert document["infinite"]
        assert document["index"] is None
        assert document["r"]["0"] is None
        assert document["delta"] == 2.0

    def test_declared_delta_mismatch(self, capsys):
        code, _, err = run(
            capsys, "index", "--graph", str(GRAPHS / "a3.json"), "--delta", "3.0"
        )
        assert code == 2
        assert err.startswith("error:")


class TestExpectation:
    def test_symbolic_text_golden(self, capsys):
        code, out, _ = run(
            capsys, "expectation", "--element", str(ELEMENTS / "two_row.json")
        )
        assert code == 0
        assert out == "(0,0,2,2,+) 0-1 2-3: (1 + d)/d\nflavors agree: True\n"

    def test_numeric_markov_value(self, capsys):
        code, out, _ = run(
            capsys,
            "expectation",
            "--element",
            str(ELEMENTS / "two_row.json"),
            "--delta",
            "2.0",
            "--format",
            "json",
        )
        assert code == 0
        document = json.loads(out)
        assert document["terms"] == [
            {
                "shape": "0,0,2,2,+",
                "pairs": [[0, 1], [2, 3]],
                "value": 1.5,
            }
        ]

    def test_document_round_trip(self, capsys):
        code, out, _ = run(
            capsys,
            "expectation",
            "--element",
            str(ELEMENTS / "two_row.json"),
            "--format",
            "json",
        )
        assert code == 0
        document = json.loads(out)
        assert document["flavors_agree"] is True
        element = element_from_document(document["element"])
        assert element_to_document(element) == document["element"]


class TestGram:
    def test_symbolic_csv_rows(self, capsys):
        code, out, _ = run(
            capsys, "gram", "--max-boundary", "2", "--format", "csv"
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "left,right,top,bottom,shading,flavor,row,col,entry"
        assert "0,0,2,0,+,tau,0,0,d + d^2" in lines
        assert "0,0,2,0,+,tau_prime,0,0,d" in lines

    def test_numeric_positivity_passes(self, capsys):
        code, out, _ = run(
            capsys, "gram", "--max-boundary", "4", "--delta", "2.0"
        )
        assert code == 0
        assert out.splitlines()[-1] == "positivity at modulus 2: PASS"

    def test_numeric_positivity_fails_below_threshold(self, capsys):
        code, out, _ = run(
            capsys,
            "gram",
            "--max-boundary",
            "6",
            "--delta",
            "1.2",
            "--format",
            "json",
        )
        assert code == 1
        document = json.loads(out)
        assert document["pass"] is False
        assert any(
            entry["min_eigenvalue"] < -1e-8 for entry in document["results"]
        )


class TestChecks:
    def test_cob_check_passes(self, capsys):
        code, out, _ = run(capsys, "cob-check", "--max-boundary", "4")
        assert code == 0
        assert out == (
            "round-trip identity: PASS\n"
            "product intertwining: PASS\n"
            "adjoint intertwining: PASS\n"
            "trace intertwining: PASS\n"
        )

    def test_derivation_check_passes(self, capsys):
        code, out, _ = run(
            capsys,
            "derivation-check",
            "--max-degree",
            "2",
            "--max-boundary",
            "4",
        )
        assert code == 0
        assert out == (
            "product rule: PASS\n"
            "kernel vanishing: PASS\n"
            "kernel reconstruction: PASS\n"
            "coassociativity: PASS\n"
        )

    def test_conjugate_check_passes(self, capsys):
        code, out, _ = run(capsys, "conjugate-check", "--max-boundary", "3")
        assert code == 0
        assert out == "adjoint pairing: PASS\n"

    def test_seeded_outputs_deterministic(self, capsys):
        first = run(
            capsys, "cob-check", "--max-boundary", "4", "--seed", "7",
            "--format", "json",
        )
        second = run(
            capsys, "cob-check", "--max-boundary", "4", "--seed", "7",
            "--format", "json",
        )
        assert first == second
        document = json.loads(first[1])
        assert document["pass"] is True
        assert [c["name"] for c in document["checks"]] == [
            "round-trip identity",
            "product intertwining",
            "adjoint intertwining",
            "trace intertwining",
        ]


class TestExitCodes:
    def test_no_arguments_usage_error(self, capsys):
        assert run(capsys)[0] == 2

    def test_help_exits_zero(self, capsys):
        assert run(capsys, "--help")[0] == 0

    def test_unknown_command(self, capsys):
        assert run(capsys, "frobnicate")[0] == 2

    def test_meander_needs_n(self, capsys):
        assert run(capsys, "meander")[0] == 2

    def test_meander_order_out_of_range(self, capsys):
        code, _, err = run(capsys, "meander", "--n", "9")
        assert code == 2
        assert err.startswith("error:")

    def test_bad_format_choice(self, capsys):
        assert run(capsys, "meander", "--n", "2", "--format", "yaml")[0] == 2

    def test_bad_delta(self, capsys):
        code, _, err = run(
            capsys,
            "trace",
            "--element",
            str(ELEMENTS / "powers.json"),
            "--delta",
            "-1",
        )
        assert code == 2
        assert "positive" in err

    def test_max_degree_guard(self, capsys):
        code, _, err = run(capsys, "derivation-check", "--max-degree", "6")
        assert code == 2
        assert "max degree" in err

    def test_missing_element_file(self, capsys):
        code, _, err = run(capsys, "trace", "--element", "/nonexistent.json")
        assert code == 2
        assert err.startswith("error:")

    def test_crossing_document_rejected(self, capsys, tmp_path):
        crossing = {
            "flavor": "V",
            "cells": [
                {
                    "shape": {
                        "left": 0,
                        "right": 0,
                        "top": 4,
                        "bottom": 0,
                        "shading": "+",
                    },
                    "terms": [
                        {
                            "pairs": [[0, 2], [1, 3]],
                            "coeff": {"num": [1], "den": [1]},
                        }
                    ],
                }
            ],
        }
        path = tmp_path / "crossing.json"
        path.write_text(json.dumps(crossing))
        code, _, err = run(capsys, "trace", "--element", str(path))
        assert code == 2
        assert "crossing" in err

    def test_strict_rejects_unreduced_coefficients(self, capsys, tmp_path):
        document = {
            "flavor": "V",
            "cells": [
                {
                    "shape": {
                        "left": 0,
                        "right": 0,
                        "top": 2,
                        "bottom": 0,
                        "shading": "+",
                    },
                    "terms": [
                        {
                            "pairs": [[0, 1]],
                            "coeff": {"num": [2, 4], "den": [2]},
                        }
                    ],
                }
            ],
        }
        path = tmp_path / "unreduced.json"
        path.write_text(json.dumps(document))
        assert run(capsys, "trace", "--element", str(path))[0] == 0
        code, _, err = run(capsys, "trace", "--element", str(path), "--strict")
        assert code == 2
        assert "canonical" in err

    def test_malformed_graph_document(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"vertices": "nope"}')
        code, _, err = run(capsys, "index", "--graph", str(path))
        assert code == 2
        assert err.startswith("error:")


class TestEntryPoints:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "tlbox.cli", "meander", "--n", "2",
             "--format", "json"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout == (
            '{"n":2,"counts":{"1":2,"2":2},"polynomial":"2*q + 2*q^2"}\n'
        )

    @pytest.mark.skipif(
        shutil.which("tlbox") is None, reason="console script not on PATH"
    )
    def test_console_script(self):
        proc = subprocess.run(
            ["tlbox", "meander", "--n", "2", "--format", "json"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout == (
            '{"n":2,"counts":{"1":2,"2":2},"polynomial":"2*q + 2*q^2"}\n'
        )
