"""CLI contract: report grammar, golden files, exit codes, witnesses."""

import json
import shutil
from pathlib import Path

import pytest

from majorkit import Mat, Perm, Vec, equivalent, first_violation, majorizes
from majorkit.cli import main

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def sandbox(tmp_path, monkeypatch, capsys):
    """Run the CLI from a scratch directory holding copies of the fixtures.

    Relative paths keep the input digests in reports byte-stable.
    """
    for f in DATA.iterdir():
        shutil.copy(f, tmp_path / f.name)
    monkeypatch.chdir(tmp_path)

    def run(*args: str):
        code = main(list(args))
        out = capsys.readouterr().out
        report = json.loads(out) if out.strip().startswith("{") else None
        return code, report

    return run


def normalized(report: dict) -> dict:
    report = dict(report)
    report["elapsed_ms"] = 0
    return report


def assert_matches_golden(report: dict, name: str):
    expected = json.loads((GOLDEN / name).read_text())
    assert normalized(report) == expected


class TestCheck:
    def test_holds(self, sandbox):
        code, report = sandbox("check", "x_mean3.json", "y_desc3.json")
        assert code == 0
        assert report["verdict"] is True
        assert_matches_golden(report, "check_holds.json")

    def test_fails_with_prefix_witness(self, sandbox):
        code, report = sandbox("check", "x_peak.json", "y_210.json")
        assert code == 1
        assert report["witness"]["kind"] == "prefix"
        assert report["witness"]["index"] == 1
        assert_matches_golden(report, "check_fails.json")
        # Witness re-verifies through the library.
        violation = first_violation(Vec([3, 0, 0]), Vec([2, 1, 0]))
        assert violation.index == report["witness"]["index"]
        assert str(violation.lhs) == report["witness"]["lhs"]

    def test_malformed_input_is_operational_error(self, sandbox):
        code, _ = sandbox("check", "malformed.json", "y_desc3.json")
        assert code == 2

    def test_missing_file(self, sandbox):
        code, _ = sandbox("check", "nope.json", "y_desc3.json")
        assert code == 2

    def test_dimension_mismatch(self, sandbox):
        code, _ = sandbox("check", "y_21.json", "y_desc3.json")
        assert code == 2

    def test_float_entries_warn_and_convert_exactly(self, sandbox):
        code, report = sandbox("check", "vec_float.json", "vec_float.json")
        assert code == 0  # reflexive
        assert len(report["warnings"]) == 4  # two floats in each of x and y
        assert "3602879701896397/36028797018963968" in report["warnings"][0]


class TestWitness:
    def test_writes_forced_average(self, sandbox):
        code, report = sandbox("witness", "x_halves.json", "y_21.json",
                               "witness_out.json")
        assert code == 0
        assert report["counts"]["transforms"] == 1
        assert_matches_golden(report, "witness_holds.json")
        written = json.loads(Path("witness_out.json").read_text())
        assert written == [["1/2", "1/2"], ["1/2", "1/2"]]

    def test_round_trip_through_the_library(self, sandbox):
        sandbox("witness", "x_mean3.json", "y_desc3.json", "d.json")
        d = Mat(json.loads(Path("d.json").read_text()))
        assert d @ Vec([3, 2, 1]) == Vec([2, 2, 2])

    def test_equal_vectors_write_the_identity(self, sandbox):
        code, report = sandbox("witness", "y_desc3.json", "y_desc3.json",
                               "id.json")
        assert code == 0
        assert report["counts"]["transforms"] == 0
        written = json.loads(Path("id.json").read_text())
        assert written == [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]

    def test_not_majorized_exits_one(self, sandbox):
        code, report = sandbox("witness", "x_peak.json", "y_210.json", "d.json")
        assert code == 1
        assert report["witness"]["kind"] == "prefix"
        assert not Path("d.json").exists()


class TestExtremizers:
    def test_tied_maximizers_report(self, sandbox):
        code, report = sandbox("extremizers", "x_ties.json", "y_desc3.json")
        assert code == 0
        counts = report["counts"]
        assert counts["max_value"] == "26"
        assert counts["n_maximizers"] == 2
        assert counts["bound"] == 2
        assert_matches_golden(report, "extremizers_ties.json")

    def test_guard_flag(self, sandbox):
        code, _ = sandbox("extremizers", "x_ties.json", "y_desc3.json",
                          "--guard-n", "2")
        assert code == 2


class TestIsotone:
    def test_global_classification(self, sandbox):
        code, report = sandbox("isotone", "mat_sym31.json", "--global")
        assert code == 0
        assert report["counts"]["classification"] == {
            "kind": "perm_scaled", "alpha": "2", "beta": "1", "perm": [0, 1],
        }
        assert_matches_golden(report, "isotone_global.json")

    def test_global_not_isotone_exits_one(self, sandbox):
        code, report = sandbox("isotone", "mat_diag12.json", "--global")
        assert code == 1
        assert report["counts"]["classification"] == {"kind": "not_isotone"}

    def test_equiv_failure_witness_reverifies(self, sandbox):
        code, report = sandbox("isotone", "mat_diag12.json",
                               "--at", "alpha_21.json", "--predicate", "equiv")
        assert code == 1
        assert_matches_golden(report, "isotone_equiv_fails.json")
        p = Perm(report["witness"]["perm"])
        a, alpha = Mat([[1, 0], [0, 2]]), Vec([2, 1])
        assert not equivalent(a @ p.apply(alpha), a @ alpha)

    def test_right_failure_witness_reverifies(self, sandbox):
        code, report = sandbox("isotone", "mat_diag12.json",
                               "--at", "alpha_21.json", "--predicate", "right",
                               "--trials", "10", "--seed", "4")
        assert code == 1
        p = Perm(report["witness"]["perm"])
        y = Vec(report["witness"]["y"])
        a, alpha = Mat([[1, 0], [0, 2]]), Vec([2, 1])
        assert majorizes(alpha, y)
        assert not majorizes(a @ p.apply(alpha), a @ y)

    def test_point_predicate_on_identity(self, sandbox):
        code, report = sandbox("isotone", "mat_sym31.json",
                               "--at", "alpha_21.json", "--predicate", "point")
        assert code == 0
        assert report["verdict"] is True

    def test_all_requires_strict_anchor(self, sandbox):
        Path("alpha_tie.json").write_text("[1, 1]")
        code, _ = sandbox("isotone", "mat_sym31.json",
                          "--at", "alpha_tie.json", "--predicate", "all")
        assert code == 2

    def test_all_statements_pass_on_planted_form(self, sandbox):
        code, report = sandbox("isotone", "mat_sym31.json",
                               "--at", "alpha_21.json", "--predicate", "all",
                               "--trials", "10", "--seed", "3")
        assert code == 0
        assert report["counts"]["bits"] == "11111"


class TestVerify:
    def test_small_campaign_golden(self, sandbox):
        code, report = sandbox("verify", "--n", "2", "--matrices", "6",
                               "--seed", "7", "--trials", "8")
        assert code == 0
        counts = report["counts"]
        assert counts["matrices"] == counts["consistent"]
        assert counts["unclassified_preservers"] == 0
        assert counts["all_true"] + counts["all_false"] == counts["matrices"]
        planted = [r for r in counts["per_matrix"]
                   if r["label"] in ("trace_map", "perm_scaled")]
        assert planted and all(r["bits"] == "11111" for r in planted)
        assert_matches_golden(report, "verify_n2.json")

    def test_flat_anchor_rejected(self, sandbox):
        code, _ = sandbox("verify", "--n", "4", "--alpha", "alpha_flat.json")
        assert code == 2


class TestContract:
    def test_determinism_modulo_elapsed(self, sandbox):
        _, first = sandbox("verify", "--n", "2", "--matrices", "5", "--seed", "1")
        _, second = sandbox("verify", "--n", "2", "--matrices", "5", "--seed", "1")
        assert normalized(first) == normalized(second)
        assert json.dumps(normalized(first), sort_keys=True) == \
            json.dumps(normalized(second), sort_keys=True)

    def test_usage_error_exits_two(self, sandbox):
        code, _ = sandbox("no-such-command")
        assert code == 2
        code, _ = sandbox("isotone", "mat_sym31.json")  # neither --at nor --global
        assert code == 2

    def test_text_mode(self, sandbox, capsys):
        code = main(["check", str(DATA / "x_mean3.json"),
                     str(DATA / "y_desc3.json"), "--text"])
        out = capsys.readouterr().out
        assert code == 0
        assert "verdict = True" in out
