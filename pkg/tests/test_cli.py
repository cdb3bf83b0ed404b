"""End-to-end command-line behavior: outputs, exit codes, reports."""

import hashlib
import io
import json
import re

import pytest

from regmatch.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _scrub_wall_clock(text: str) -> str:
    return re.sub(r'"wall_clock_seconds": [0-9.]+', '"wall_clock_seconds": X',
                  text)


# ---------------------------------------------------------------------------
# poly

def test_poly_file(tmp_path, capsys):
    path = tmp_path / "graphs.g6"
    path.write_text("C~\n?\n")
    code, out, err = run(capsys, "poly", str(path))
    assert code == 0
    assert out.splitlines() == ["1 6 3", "1"]


def test_poly_stdin(monkeypatch, capsys):
    monkeypatch.setattr("sys.stdin", io.StringIO("C~\n"))
    code, out, err = run(capsys, "poly")
    assert code == 0
    assert out.strip() == "1 6 3"


def test_poly_malformed_names_line(tmp_path, capsys):
    path = tmp_path / "bad.g6"
    path.write_text("C~\nC\n")
    code, out, err = run(capsys, "poly", str(path))
    assert code == 2
    assert "bad.g6" in err
    assert "line 2" in err


# ---------------------------------------------------------------------------
# ak-table

def test_ak_table_default_rows(capsys):
    code, out, err = run(capsys, "ak-table", "--d", "3", "--kmax", "10")
    assert code == 0
    lines = out.splitlines()
    rows = {line.split()[0]: line.split()[1:] for line in lines[1:]}
    assert rows["K4"] == ("3 15 81 441 2403 13095 71361 388881 2119203 "
                          "11548575").split()
    assert rows["T3"] == ("3 15 87 543 3543 23823 163719 1143999 8099511 "
                          "57959535").split()
    assert rows["DN3"][:4] == ["3", "15", "84", "493"]
    assert rows["DN2"][:4] == ["3", "15", "84", "493"]
    assert rows["DN3"][5] == "18261" and rows["DN2"][5] == "18255"


def test_ak_table_first_column_is_degree(capsys):
    code, out, err = run(capsys, "ak-table", "--d", "3", "--kmax", "1")
    assert code == 0
    for line in out.splitlines()[1:]:
        assert line.split()[1:] == ["3"]


def test_ak_table_degree_four_rows_agree_to_k2(capsys):
    # a_1 and a_2 are degree-determined, so K_5 matches the tree
    code, out, err = run(capsys, "ak-table", "--d", "4", "--kmax", "2")
    assert code == 0
    rows = [line.split()[1:] for line in out.splitlines()[1:]]
    assert len(rows) == 2
    assert rows[0] == rows[1] == ["4", "28"]


# ---------------------------------------------------------------------------
# verify

def test_verify_complete_graph_equality(capsys):
    code, out, err = run(capsys, "verify", "--d", "3", "--nmax", "4",
                         "--lambda", "1")
    assert code == 0
    assert "(equality)" in out
    assert "graphs=1 points=1 HOLDS=1 FAILS=0 INCONCLUSIVE=0" in out


def test_verify_necklace_rows_are_equalities(capsys):
    code, out, err = run(capsys, "verify", "--d", "3", "--nmax", "4",
                         "--lambda", "1", "--include-necklaces", "3")
    assert code == 0
    lines = [line for line in out.splitlines() if "min margin" in line]
    assert len(lines) == 3
    assert all("(equality)" in line for line in lines)


def test_verify_necklaces_need_cubic(capsys):
    code, out, err = run(capsys, "verify", "--d", "4", "--nmax", "5",
                         "--lambda", "1", "--include-necklaces", "2")
    assert code == 2
    assert "necklace rows require --d 3" in err


def test_verify_json_report(capsys):
    code, out, err = run(capsys, "verify", "--d", "3", "--nmax", "6",
                         "--lambda", "1/4", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["command"] == "verify"
    assert rep["parameters"]["lambdas"] == ["1/4"]
    assert rep["toolkit_version"] == "0.1.0"
    keys = [item["canonical_key"] for item in rep["items"]]
    assert keys == sorted(keys)
    assert rep["item_count"] == len(keys) == 3
    expected = hashlib.sha256("\n".join(sorted(set(keys))).encode()).hexdigest()
    assert rep["corpus_checksums"]["corpus"] == expected
    margin = rep["items"][0]["margin"]
    assert set(margin) == {"lo", "hi", "decimal", "radius"}


def test_verify_reports_are_deterministic(capsys):
    argv = ("verify", "--d", "3", "--nmax", "6", "--lambda", "1/4",
            "--format", "json")
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert _scrub_wall_clock(first) == _scrub_wall_clock(second)


def test_out_file_keeps_table_on_stdout(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code, out, err = run(capsys, "verify", "--d", "3", "--nmax", "4",
                         "--lambda", "1", "--out", str(out_path))
    assert code == 0
    assert "min margin" in out
    rep = json.loads(out_path.read_text())
    assert rep["command"] == "verify"


def test_csv_format(capsys):
    code, out, err = run(capsys, "verify", "--d", "3", "--nmax", "6",
                         "--lambda", "1/4", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("canonical_key,")
    assert "margin.lo" in lines[0]
    assert len(lines) == 4


def test_bad_rational_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--lambda", "abc"])
    assert exc.value.code == 2


# ---------------------------------------------------------------------------
# ladder / remez / cd

def test_ladder_covers(capsys):
    code, out, err = run(capsys, "ladder")
    assert code == 0
    assert "COVERED (0, 0.3575]" in out


def test_ladder_gap_from_config(tmp_path, capsys):
    config = tmp_path / "ladder.txt"
    config.write_text("0.2  # first rung\n0.9\n1.4\n")
    code, out, err = run(capsys, "ladder", "--config", str(config))
    assert code == 1
    assert "GAP" in out
    assert "NOT COVERED" in out


def test_remez_output(capsys):
    code, out, err = run(capsys, "remez", "--a", "0.2")
    assert code == 0
    assert "c_4" in out
    assert "epsilon = 7.853682022e-8" in out
    assert "lam_min" in out and "lam_max" in out


def test_cd_table(capsys):
    code, out, err = run(capsys, "cd", "--dmax", "9")
    assert code == 0
    assert "1 (exact)" in out
    for value in ("1.317124345", "1.593204592", "1.844705431"):
        assert value in out


# ---------------------------------------------------------------------------
# necklace / polytope

def test_necklace_default_base(capsys):
    code, out, err = run(capsys, "necklace")
    assert code == 0
    assert "trace(B) coefficients: 1 6 3" in out
    assert "det(B) coefficients:   0 0 0 -2 2" in out
    assert out.count("==") == 3  # k = 2, 3, 4


def test_necklace_triangle_discriminant(capsys):
    code, out, err = run(capsys, "necklace", "--builtin", "c3")
    assert code == 0
    assert "det(B) coefficients:   0 0 0 -1" in out


def test_necklace_graph6_base(capsys):
    code, out, err = run(capsys, "necklace", "--graph6", "C~", "--kmax", "2")
    assert code == 0
    assert "trace(B) coefficients: 1 6 3" in out


def test_necklace_rejects_non_edge(capsys):
    code, out, err = run(capsys, "necklace", "--builtin", "petersen",
                         "--edge", "0,2")
    assert code == 2
    assert "not an edge" in err


def test_polytope_all_hold(capsys):
    code, out, err = run(capsys, "polytope", "--d", "4", "--nmax", "7")
    assert code == 0
    assert "T(4) = 35 ln(5)" in out
    assert "FAILS" not in out


def test_polytope_complete_graph_fails(capsys):
    code, out, err = run(capsys, "polytope", "--d", "4", "--nmax", "5",
                         "--include-complete")
    assert code == 1
    assert "FAILS" in out


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert "regmatch 0.1.0" in capsys.readouterr().out
