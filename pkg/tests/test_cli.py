import json

import pytest

from biramsey.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_OK, EXIT_USAGE, main
from biramsey.ramsey import read_witness, verify_witness


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_z_compute(capsys):
    code, out, _ = run(capsys, "z", "compute", "3", "3", "2")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "z(3,3,2) = 6 (computed-exact)"
    assert out.splitlines()[1].startswith("nodes: ")


def test_z_compute_budget(capsys):
    code, out, _ = run(capsys, "z", "compute", "9", "9", "2", "--budget", "5")
    assert code == EXIT_BUDGET
    assert "budget of 5 nodes exhausted" in out


def test_z_bound(capsys):
    code, out, _ = run(capsys, "z", "bound", "17", "17", "2")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "74 ≤ ? ≤ 76"


def test_verify_shipped_table(capsys):
    code, out, _ = run(capsys, "z", "verify-table")
    assert code == EXIT_OK
    assert out.splitlines()[-1] == "9 records checked, 0 violations"


def test_verify_bad_table(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("3 3 2 7 7 paper\n")
    code, out, _ = run(capsys, "z", "verify-table", str(path))
    assert code == EXIT_FAIL
    assert "1 violations" in out
    path.write_text("3 3 x\n")
    code, _, err = run(capsys, "z", "verify-table", str(path))
    assert code == EXIT_FAIL and "line 1" in err


def test_ramsey_number(capsys):
    code, out, _ = run(capsys, "ramsey", "number", "2,2")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "B(2,2) = 5"


def test_ramsey_number_budget(capsys):
    code, out, _ = run(capsys, "ramsey", "number", "2,2", "--budget", "150")
    assert code == EXIT_BUDGET
    assert out.splitlines()[0] == "B(2,2) ≥ 5"


def test_ramsey_search_exhausts(capsys):
    code, out, _ = run(capsys, "ramsey", "search", "5", "2,2")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "Exhausted; no witness"


def test_ramsey_search_budget(capsys):
    code, out, _ = run(capsys, "ramsey", "search", "5", "2,2", "--budget", "50")
    assert code == EXIT_BUDGET
    assert out.startswith("BudgetExceeded")


def test_search_then_verify_round_trip(capsys, tmp_path):
    path = tmp_path / "w.txt"
    code, out, _ = run(capsys, "ramsey", "search", "4", "2,2", "--out", str(path))
    assert code == EXIT_OK and "written" in out
    assert verify_witness(read_witness(path), (2, 2)).valid
    code, out, _ = run(capsys, "ramsey", "verify", str(path), "2,2", "--naive")
    assert code == EXIT_OK and out.splitlines()[-1] == "valid"
    code, out, _ = run(capsys, "ramsey", "verify", str(path), "1,2")
    assert code == EXIT_FAIL and out.splitlines()[-1] == "invalid"
    code, _, err = run(capsys, "ramsey", "verify", str(path), "2,2,2")
    assert code == EXIT_FAIL and "colours" in err


def test_verify_malformed_file(capsys, tmp_path):
    path = tmp_path / "w.txt"
    path.write_text("2 2 2\n01\n1x\n")
    code, _, err = run(capsys, "ramsey", "verify", str(path), "2,2")
    assert code == EXIT_FAIL and "line 3" in err


def test_replay_b223_nonstrict(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "replay", "b223", "--convention", "nonstrict", "--out", str(path))
    assert code == EXIT_OK
    assert "verdict: infeasible" in out
    assert out.splitlines()[-1] == "failed steps: 0; flagged steps: 1"
    assert json.loads(path.read_text())["conclusion"] == "infeasible"


def test_replay_b223_strict(capsys):
    code, out, _ = run(capsys, "replay", "b223", "--max-cases", "3")
    assert code == EXIT_FAIL
    assert "feasible-not-refuted" in out


def test_replay_empty_table(capsys, tmp_path):
    path = tmp_path / "empty.txt"
    path.write_text("# nothing\n")
    code, out, _ = run(capsys, "replay", "b223", "--ztable", str(path))
    assert code == EXIT_FAIL
    assert "missing: z(16,17,2), z(17,17,2), z(17,17,3)" in out
    code, out, _ = run(capsys, "replay", "upper18", "--ztable", str(path))
    assert code == EXIT_FAIL and "missing" in out


def test_replay_upper18(capsys):
    code, out, _ = run(capsys, "replay", "upper18")
    assert code == EXIT_OK and out.splitlines()[-1] == "holds: 318 < 324"
    code, out, _ = run(capsys, "replay", "upper18", "--b", "17")
    assert code == EXIT_FAIL and out.splitlines()[-1] == "fails: 289 = 289, not <"


@pytest.mark.parametrize("argv", [
    ["z", "compute", "3", "3"],
    ["ramsey", "search", "4", "2,x"],
    ["ramsey", "search", "4", "2,2", "--budget", "0"],
    ["replay", "b223", "--convention", "loose"],
    ["nothing"],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == EXIT_USAGE
    capsys.readouterr()


def test_value_errors_map_to_usage(capsys):
    code, _, err = run(capsys, "ramsey", "search", "19", "2,2")
    assert code == EXIT_USAGE and "usage error" in err
