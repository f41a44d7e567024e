import json
import subprocess
import sys

import pytest

from epkit.cli import (
    EXIT_INCONCLUSIVE,
    EXIT_INPUT_ERROR,
    EXIT_PASS,
    EXIT_PROPERTY_FALSE,
    InputError,
    format_matrix,
    main,
    parse_matrix_obj,
    read_matrix,
)
from epkit.linalg import MatrixQ


def mfile(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj) if isinstance(obj, dict) else obj)
    return str(path)


def matrix_obj(rows):
    return {"rows": len(rows), "cols": len(rows[0]) if rows else 0, "entries": rows}


def run_main(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- matrix file parsing --------------------------------------------------------


def test_parse_matrix_obj_happy():
    m = parse_matrix_obj({"rows": 2, "cols": 2, "entries": [["1", "1/2i"], [3, "2-1/3i"]]})
    assert m == MatrixQ.from_rows([["1", "1/2i"], ["3", "2-1/3i"]])


def test_parse_matrix_obj_rejections():
    bad = [
        [],  # not a dict
        {"rows": 2, "cols": 2},
        {"rows": 2, "cols": 2, "entries": [["1", "2"]]},
        {"rows": 1, "cols": 2, "entries": [["1"]]},
        {"rows": 1, "cols": 1, "entries": [[1.5]]},
        {"rows": 1, "cols": 1, "entries": [[True]]},
        {"rows": -1, "cols": 1, "entries": []},
        {"rows": "2", "cols": 1, "entries": []},
    ]
    for obj in bad:
        with pytest.raises(InputError):
            parse_matrix_obj(obj)


def test_format_matrix_round_trips(tmp_path):
    m = MatrixQ.from_rows([["1/2", "-3i"], ["0", "2+2i"]])
    text = format_matrix(m)
    path = tmp_path / "m.json"
    path.write_text(text)
    again = read_matrix(str(path))
    assert again == m
    assert format_matrix(again) == text


# -- pinv -----------------------------------------------------------------------


def test_pinv_golden_output(tmp_path, capsys):
    path = mfile(tmp_path, "n.json", matrix_obj([["0", "1"], ["0", "0"]]))
    code, out, err = run_main(capsys, ["pinv", path])
    assert code == EXIT_PASS and err == ""
    expected_matrix = format_matrix(MatrixQ.from_rows([["0", "0"], ["1", "0"]]))
    assert out == (expected_matrix
                   + "axa = a: PASS\n"
                   + "xax = x: PASS\n"
                   + "(ax)* = ax: PASS\n"
                   + "(xa)* = xa: PASS\n")


def test_pinv_out_file(tmp_path, capsys):
    path = mfile(tmp_path, "a.json", matrix_obj([["2", "0"], ["0", "0"], ["0", "0"]]))
    out_path = tmp_path / "x.json"
    code, out, _ = run_main(capsys, ["pinv", path, "--out", str(out_path)])
    assert code == EXIT_PASS
    x = read_matrix(str(out_path))
    assert x == MatrixQ.from_rows([["1/2", "0", "0"], ["0", "0", "0"]])
    assert out.startswith(format_matrix(x))


def test_pinv_byte_stable(tmp_path, capsys):
    path = mfile(tmp_path, "a.json", matrix_obj([["1", "2"], ["3", "4"]]))
    _, out1, _ = run_main(capsys, ["pinv", path])
    _, out2, _ = run_main(capsys, ["pinv", path])
    assert out1 == out2


# -- ep -------------------------------------------------------------------------


def test_ep_yes_and_no(tmp_path, capsys):
    path = mfile(tmp_path, "d.json", matrix_obj([["2", "0"], ["0", "0"]]))
    code, out, _ = run_main(capsys, ["ep", path])
    assert code == EXIT_PASS
    assert out.startswith("EP: yes\n")
    assert "p = a a+:\n" in out and "q = a+ a:\n" in out

    path = mfile(tmp_path, "n.json", matrix_obj([["0", "1"], ["0", "0"]]))
    code, out, _ = run_main(capsys, ["ep", path])
    assert code == EXIT_PROPERTY_FALSE
    assert out.startswith("EP: no\n")


def test_ep_rejects_rectangular(tmp_path, capsys):
    path = mfile(tmp_path, "r.json", matrix_obj([["1", "0"]]))
    code, out, err = run_main(capsys, ["ep", path])
    assert code == EXIT_INPUT_ERROR
    assert err.startswith("error:") and "square" in err


# -- shared input error paths ------------------------------------------------------


def test_input_error_paths(tmp_path, capsys):
    bad_scalar = mfile(tmp_path, "b.json", matrix_obj([["1//2"]]))
    code, _, err = run_main(capsys, ["pinv", bad_scalar])
    assert code == EXIT_INPUT_ERROR and "entry (0,0)" in err

    code, _, err = run_main(capsys, ["pinv", str(tmp_path / "missing.json")])
    assert code == EXIT_INPUT_ERROR and "cannot read" in err

    not_json = mfile(tmp_path, "x.json", "{nope")
    code, _, err = run_main(capsys, ["pinv", not_json])
    assert code == EXIT_INPUT_ERROR and "not valid JSON" in err

    ragged = mfile(tmp_path, "g.json", {"rows": 2, "cols": 2, "entries": [["1", "2"], ["3"]]})
    code, _, err = run_main(capsys, ["pinv", ragged])
    assert code == EXIT_INPUT_ERROR and "entry row 1" in err


# -- battery -----------------------------------------------------------------------


def test_battery_stdout_report(capsys):
    code, out, _ = run_main(capsys, ["battery", "--theorem", "3.2",
                                     "--trials", "8", "--size", "3", "--seed", "7"])
    assert code == EXIT_PASS
    obj = json.loads(out)
    assert obj["theorem_id"] == "3.2"
    assert obj["trials"] == 8
    assert obj["failed"] is False
    assert obj["seed"] == 7
    assert list(obj) == ["theorem_id", "trials", "per_statement_truth_counts",
                         "equivalence_violations", "inconclusive_count",
                         "seed", "failed", "elapsed"]


def test_battery_report_file_and_determinism(tmp_path, capsys):
    out1, out2 = str(tmp_path / "r1.json"), str(tmp_path / "r2.json")
    for dest in (out1, out2):
        code, out, _ = run_main(capsys, ["battery", "--theorem", "3.5",
                                         "--trials", "6", "--size", "3",
                                         "--seed", "9", "--out", dest])
        assert code == EXIT_PASS and out == ""
    o1, o2 = json.load(open(out1)), json.load(open(out2))
    o1.pop("elapsed"), o2.pop("elapsed")
    assert o1 == o2


def test_battery_unknown_theorem(capsys):
    code, _, err = run_main(capsys, ["battery", "--theorem", "9.9", "--trials", "1"])
    assert code == EXIT_INPUT_ERROR
    assert "unknown theorem id '9.9'" in err and "supported:" in err


def test_battery_zero_trials(capsys):
    code, out, _ = run_main(capsys, ["battery", "--theorem", "4.1", "--trials", "0"])
    assert code == EXIT_PASS
    assert json.loads(out)["trials"] == 0


def test_battery_size_one_falls_back(capsys):
    # sizes below 2 cannot host non-ep draws; the workload swaps them out
    code, out, _ = run_main(capsys, ["battery", "--theorem", "3.4",
                                     "--trials", "8", "--size", "1", "--seed", "3"])
    assert code == EXIT_PASS
    assert json.loads(out)["failed"] is False


def test_battery_bad_flags(capsys):
    code, _, err = run_main(capsys, ["battery", "--theorem", "3.2", "--trials", "-1"])
    assert code == EXIT_INPUT_ERROR and "--trials" in err
    code, _, err = run_main(capsys, ["battery", "--theorem", "3.2", "--size", "-1"])
    assert code == EXIT_INPUT_ERROR and "--size" in err
    code, _, err = run_main(capsys, ["battery", "--theorem", "3.2", "--size", "9"])
    assert code == EXIT_INPUT_ERROR and "size cap" in err


# -- hermitian ----------------------------------------------------------------------


def test_hermitian_pass(tmp_path, capsys):
    path = mfile(tmp_path, "d.json", matrix_obj([["1", "0"], ["0", "-2"]]))
    for p in ("1", "2", "inf"):
        code, out, _ = run_main(capsys, ["hermitian", path, "--p", p])
        assert code == EXIT_PASS
        assert out.startswith("verdict: hermitian\n")
        assert "grid: 1024 points" in out


def test_hermitian_fail_golden_deviation(tmp_path, capsys):
    path = mfile(tmp_path, "n.json", matrix_obj([["0", "1"], ["0", "0"]]))
    code, out, _ = run_main(capsys, ["hermitian", path, "--p", "2",
                                     "--tmax", "1.0", "--grid", "513"])
    assert code == EXIT_PROPERTY_FALSE
    assert out.startswith("verdict: not_hermitian\n")
    assert "max deviation of |exp(i t a)| from 1: 0.61803398875 at t = -1\n" in out


def test_hermitian_idempotent_but_oblique(tmp_path, capsys):
    path = mfile(tmp_path, "q.json", matrix_obj([["1", "1"], ["0", "0"]]))
    code, out, _ = run_main(capsys, ["hermitian", path, "--p", "2"])
    assert code == EXIT_PROPERTY_FALSE


def test_hermitian_between_tolerances_is_inconclusive_exit(tmp_path, capsys):
    # deviation lands between tol_pass and tol_fail: a verdict, not an error
    path = mfile(tmp_path, "nd.json", matrix_obj([["0", "1/10000000"], ["0", "0"]]))
    code, out, err = run_main(capsys, ["hermitian", path, "--p", "2"])
    assert code == EXIT_INCONCLUSIVE
    assert "verdict: inconclusive" in out
    assert err == ""


def test_hermitian_unresolvable_norm_is_inconclusive_exit(tmp_path, capsys):
    # top singular pair 1e-9 apart over a spread spectrum: the estimate
    # cannot settle, and the command must not pretend it has a verdict
    path = mfile(tmp_path, "stall.json", matrix_obj(
        [["1i", "0", "0"], ["0", "1000000001/1000000000i", "0"], ["0", "0", "-2i"]]))
    code, out, err = run_main(capsys, ["hermitian", path, "--p", "2", "--grid", "8"])
    assert code == EXIT_INCONCLUSIVE
    assert out == ""
    assert err.startswith("error:") and "converge" in err


def test_hermitian_bad_flags(tmp_path, capsys):
    path = mfile(tmp_path, "d.json", matrix_obj([["1"]]))
    code, _, err = run_main(capsys, ["hermitian", path, "--p", "3"])
    assert code == EXIT_INPUT_ERROR and "p must be" in err
    code, _, err = run_main(capsys, ["hermitian", path, "--grid", "1"])
    assert code == EXIT_INPUT_ERROR and "--grid" in err
    code, _, err = run_main(capsys, ["hermitian", path, "--tmax", "0"])
    assert code == EXIT_INPUT_ERROR and "--tmax" in err
    rect = mfile(tmp_path, "r.json", matrix_obj([["1", "0"]]))
    code, _, err = run_main(capsys, ["hermitian", rect])
    assert code == EXIT_INPUT_ERROR and "square" in err


# -- parser plumbing -------------------------------------------------------------------


def test_help_and_missing_subcommand(capsys):
    assert main(["--help"]) == 0
    capsys.readouterr()
    assert main([]) == EXIT_INPUT_ERROR
    capsys.readouterr()


def test_module_entry_point(tmp_path):
    path = mfile(tmp_path, "d.json", matrix_obj([["2", "0"], ["0", "0"]]))
    proc = subprocess.run([sys.executable, "-m", "epkit", "ep", path],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("EP: yes\n")
