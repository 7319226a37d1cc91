from __future__ import annotations

import csv
import json
import math

import pytest

from tlmetric.cli import eval_r, main, parse_N_list


@pytest.mark.parametrize("expr,N,expected", [
    ("6", 5, 6.0), ("N+1", 5, 6.0), ("2N", 4, 8.0), ("10N", 3, 30.0),
    ("N+pi", 2, 2 + math.pi), ("N+0.5", 7, 7.5), ("N+e", 2, 2 + math.e),
])
def test_eval_r(expr, N, expected):
    assert math.isclose(eval_r(expr, N), expected)


def test_eval_r_rejects_code():
    with pytest.raises(ValueError):
        eval_r("__import__('os')", 3)


def test_parse_N():
    assert parse_N_list("2..5") == [2, 3, 4, 5]
    assert parse_N_list("2,4") == [2, 4]


def test_verify_exit_codes(capsys):
    assert main(["verify", "--N", "5", "--r", "6"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["pass"] is True
    assert main(["verify", "--N", "5", "--r", "4"]) == 2
    assert "requires r > N" in capsys.readouterr().err


def test_verify_failure_exit(capsys):
    # an absurdly small tolerance makes rounding noise a verification failure
    assert main(["verify", "--N", "4", "--r", "4.5", "--tol", "1e-30"]) == 1


def test_tol_from_env(monkeypatch, capsys):
    monkeypatch.setenv("TLMETRIC_TOL", "1e-6")
    assert main(["verify", "--N", "3", "--r", "4"]) == 0
    assert json.loads(capsys.readouterr().out)["params"]["tol"] == 1e-6


def test_sweep_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["verify", "--N", "2..4", "--r", "N+1,2N", "--out", str(a)]) == 0
    assert main(["verify", "--N", "2..4", "--r", "N+1,2N", "--out", str(b), "--jobs", "2"]) == 0
    assert a.read_bytes() == b.read_bytes()
    data = json.loads(a.read_text())
    assert [(rep["params"]["N"], rep["params"]["r"]) for rep in data["reports"]] == \
        [(2, 3.0), (2, 4.0), (3, 4.0), (3, 6.0), (4, 5.0), (4, 8.0)]


def test_gram_csv(tmp_path):
    out = tmp_path / "g.csv"
    assert main(["gram", "--N", "5", "--n", "2", "--r", "6", "--format", "csv",
                 "--out", str(out)]) == 0
    rows = [r for r in csv.reader(l for l in out.read_text().splitlines()
                                  if not l.startswith("#"))]
    assert len(rows) == 11 and len(rows[0]) == 11
    assert rows[0][1:3] == ["1", "e2"]


def test_gram_json_r4(capsys):
    assert main(["gram", "--N", "2", "--n", "1", "--r", "4"]) == 0
    data = json.loads(capsys.readouterr().out)
    s = math.sqrt(2)
    for got, want in zip(sum(data["matrix"], []), [s, -1, -1, s]):
        assert math.isclose(got, want, abs_tol=1e-12)
    assert data["basis"][1]["word"] == "e1"


def test_gram_wmax(capsys):
    assert main(["gram", "--N", "7", "--wmax", "--r", "8"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["matrix"]) == 14


def test_gram_invalid(capsys):
    assert main(["gram", "--N", "5", "--n", "9", "--r", "6"]) == 2
    assert main(["gram", "--N", "5", "--r", "6"]) == 2


def test_render_half(capsys):
    assert main(["render", "--word", "e1e3e2e5e4e3", "--N", "7", "--half"]) == 0
    assert "∪∪∪+" in capsys.readouterr().out


def test_render_tableau(capsys):
    assert main(["render", "--tableau", "3,2", "--N", "5", "--n", "2"]) == 0
    out = capsys.readouterr().out
    assert "[2][3][4]" in out and "e2e1e4e3e2" in out


def test_render_word(capsys):
    assert main(["render", "--word", "e2", "--N", "5"]) == 0
    assert "\\_/" in capsys.readouterr().out
    assert main(["render", "--word", "e2x", "--N", "5"]) == 2


def test_spectrum(capsys):
    assert main(["spectrum", "--N", "2", "--r", "4"]) == 0
    out = capsys.readouterr().out
    assert "-1.414213562" in out
    assert main(["spectrum", "--N", "4", "--r", "5", "--transfer", "--x", "0.3,0.7"]) == 0
    assert "eta-hermiticity" in capsys.readouterr().out


def test_basis(capsys):
    assert main(["basis", "--N", "5", "--n", "2"]) == 0
    assert capsys.readouterr().out.count("t_") == 10
