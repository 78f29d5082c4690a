import csv
import subprocess
import sys

import pytest

import caputofem.cli as cli
from caputofem.linear_solver import ConvergenceError


def test_solve(tmp_path, capsys):
    out = tmp_path / "profile.csv"
    rc = cli.main(["solve", "--example", "example1", "--alpha", "0.5", "--dt", "0.05",
                   "--dx", "0.02", "--T", "1", "--out", str(out)])
    assert rc == 0
    text = capsys.readouterr().out
    assert "max_error=" in text and "l2_error=" in text
    with open(out, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["x", "u_exact", "u_num", "error"]
    assert len(rows) == 52


def test_solve_manufactured(tmp_path):
    rc = cli.main(["solve", "--example", "manufactured:p=1,q=2", "--alpha", "0.3", "--dt", "0.1",
                   "--dx", "0.1", "--T", "0.5", "--out", str(tmp_path / "p.csv")])
    assert rc == 0


@pytest.mark.parametrize("argv", [
    ["--example", "nope", "--alpha", "0.5", "--dt", "0.1", "--dx", "0.1", "--T", "1"],
    ["--example", "example1", "--alpha", "1.5", "--dt", "0.1", "--dx", "0.1", "--T", "1"],
    ["--example", "example1", "--alpha", "0.5", "--dt", "0.3", "--dx", "0.1", "--T", "1"],
    ["--example", "example1", "--alpha", "0.5", "--dt", "0.1", "--dx", "0.7", "--T", "1"],
    ["--example", "example1", "--alpha", "0.5", "--dt", "0.1", "--dx", "0.1", "--T", "-1"],
])
def test_solve_validation(argv, tmp_path):
    assert cli.main(["solve", *argv, "--out", str(tmp_path / "p.csv")]) == 2


def test_solver_failure_exit_code(monkeypatch, tmp_path):
    def boom(*a, **kw):
        raise ConvergenceError("step 1: did not converge", 5, 1.0)

    monkeypatch.setattr(cli, "march", boom)
    rc = cli.main(["solve", "--example", "example1", "--alpha", "0.5", "--dt", "0.1",
                   "--dx", "0.1", "--T", "1", "--out", str(tmp_path / "p.csv")])
    assert rc == 3


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as info:
        cli.main(["solve", "--example", "example1"])
    assert info.value.code == 2


def test_converge_time(tmp_path, capsys):
    out = tmp_path / "study.csv"
    rc = cli.main(["converge", "--example", "example1", "--alpha-list", "0.5,0.9", "--axis", "time",
                   "--levels", "3", "--base-K", "10", "--base-N", "400", "--T", "1", "--out", str(out)])
    assert rc == 0
    assert capsys.readouterr().out.count("rate=") == 6
    with open(out, newline="") as fh:
        rows = list(csv.reader(fh))
    assert len(rows) == 7


def test_converge_space(tmp_path):
    out = tmp_path / "study.csv"
    rc = cli.main(["converge", "--example", "example1", "--alpha-list", "0.5", "--axis", "space",
                   "--levels", "3", "--base-K", "1", "--base-N", "4", "--T", "1", "--out", str(out)])
    assert rc == 0


def test_converge_validation(tmp_path):
    rc = cli.main(["converge", "--example", "example1", "--alpha-list", "0.5", "--axis", "time",
                   "--levels", "2", "--base-K", "10", "--base-N", "400", "--T", "1",
                   "--out", str(tmp_path / "s.csv")])
    assert rc == 2


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "caputofem", "solve", "--example", "example2", "--alpha", "0.2",
         "--dt", "0.1", "--dx", "0.1", "--T", "1", "--out", str(tmp_path / "p.csv")],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert (tmp_path / "p.csv").exists()
