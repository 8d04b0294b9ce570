import csv
from decimal import Decimal

import pytest

from turan.cli import main
from turan.errors import HypothesisViolated
from turan.graph import expected_vertex_count_general, furedi_graph, import_graph
from turan.report import bounds_row, family_params, format_csv, round6


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_build_prints_summary(capsys, tmp_path):
    out_path = tmp_path / "g.txt"
    code, out, _ = run(capsys, "build", "--p", "3", "--k", "2", "--t", "4", "--out", str(out_path))
    assert code == 0 and out == "n=20 m=86 loops=8\n"
    assert import_graph(out_path).adj == furedi_graph(9, 4).adj


def test_build_even_case(capsys):
    assert run(capsys, "build", "--p", "2", "--k", "2", "--t", "3")[:2] == (0, "n=5 m=8 loops=4\n")


def test_build_not_prime(capsys):
    code, _, err = run(capsys, "build", "--p", "4", "--k", "1", "--t", "1")
    assert code == 2 and "NotPrime" in err


def test_build_io_failure(capsys, tmp_path):
    code, _, _ = run(capsys, "build", "--p", "3", "--t", "2", "--out", str(tmp_path / "no" / "g.txt"))
    assert code == 3


def test_build_dimacs(capsys, tmp_path):
    path = tmp_path / "g.dimacs"
    run(capsys, "build", "--p", "2", "--k", "2", "--t", "3", "--out", str(path), "--dimacs")
    assert "p edge 5 8" in path.read_text()


@pytest.fixture
def g94_file(tmp_path, capsys):
    path = tmp_path / "g94.txt"
    main(["build", "--p", "3", "--k", "2", "--t", "4", "--out", str(path)])
    capsys.readouterr()
    return path


def test_verify_free(capsys, g94_file):
    code, out, _ = run(capsys, "verify", str(g94_file), "--a", "3", "--b", "3")
    assert code == 0 and "verdict=free" in out


def test_verify_not_free(capsys, g94_file):
    code, out, _ = run(capsys, "verify", str(g94_file), "--a", "2", "--b", "2")
    assert code == 1 and "verdict=not_free" in out and "witness=0,2" in out


def test_verify_missing_and_malformed(capsys, tmp_path):
    assert run(capsys, "verify", str(tmp_path / "x"), "--a", "2", "--b", "2")[0] == 3
    bad = tmp_path / "bad.txt"
    bad.write_text("hello\n")
    assert run(capsys, "verify", str(bad), "--a", "2", "--b", "2")[0] == 3


def test_verify_workers_identical(capsys, g94_file):
    one = run(capsys, "verify", str(g94_file), "--a", "3", "--b", "3", "--workers", "1")
    two = run(capsys, "verify", str(g94_file), "--a", "3", "--b", "3", "--workers", "2")
    assert one == two


def test_verify_budget(capsys, g94_file):
    assert run(capsys, "verify", str(g94_file), "--a", "3", "--b", "3", "--budget", "10")[0] == 2


def test_lemma_commands(capsys):
    code, out, _ = run(capsys, "lemma", "l", "--q", "3")
    assert code == 0 and "max_solutions=2" in out
    code, out, _ = run(capsys, "lemma", "ag", "--q", "2", "--r", "3")
    assert code == 0 and "verdict=holds" in out
    code, _, err = run(capsys, "lemma", "ag", "--q", "5", "--r", "4", "--mode", "exhaustive")
    assert code == 2 and "BudgetExceeded" in err
    assert run(capsys, "lemma", "ag", "--q", "2")[0] == 2
    code, out, _ = run(capsys, "lemma", "ag", "--q", "4", "--r", "3", "--mode", "sampled",
                       "--samples", "200", "--seed", "3")
    assert code == 0 and "seed=3" in out and "mode=sampled" in out


def test_table_k33(capsys, tmp_path):
    path = tmp_path / "t.csv"
    code, out, _ = run(capsys, "table", "k33", "--q", "2", "3", "4", "5", "7", "--csv", str(path))
    assert code == 0
    rows = list(csv.DictReader(path.open()))
    assert list(rows[0]) == ["q", "t", "r", "n", "m", "a", "b", "ratio", "target"]
    assert [int(r["n"]) for r in rows] == [q ** 3 - q ** 2 + q - 1 for q in (2, 3, 4, 5, 7)]
    assert [int(r["m"]) for r in rows] == [8, 86, 400, 1288, 7326]
    assert rows[-1]["ratio"] == str(round6(7326 / 300 ** (5 / 3)))
    assert len(out.splitlines()) == 6


def test_table_k2t(capsys):
    code, out, _ = run(capsys, "table", "k2t", "--q", "5", "--t", "2")
    row = out.splitlines()[1].split()
    assert code == 0 and row[3] == "12" and row[5:7] == ["2", "3"]


def test_table_errors(capsys):
    assert run(capsys, "table", "k33")[0] == 2
    assert run(capsys, "table", "k2t", "--q", "5")[0] == 2
    code, out, err = run(capsys, "table", "k2t", "--q", "5", "7", "--t", "2")
    assert code == 0
    code, out, err = run(capsys, "table", "k2t", "--q", "5", "7", "--t", "4")
    assert code == 1 and "q=7" in err and len(out.splitlines()) == 2


def test_usage_errors(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_suite_command(capsys):
    code, out, _ = run(capsys, "suite", "--q", "3", "--t", "2", "--r", "3")
    assert code == 0
    assert all(line.endswith("status=pass") for line in out.splitlines())
    assert run(capsys, "suite", "--q", "9", "--t", "3")[0] == 2


def test_workers_env(monkeypatch):
    from turan.cli import build_parser
    monkeypatch.setenv("TURAN_WORKERS", "4")
    assert build_parser().parse_args(["verify", "f", "--a", "2", "--b", "2"]).workers == 4


# -- report --------------------------------------------------------------------

def test_round6_half_even():
    assert round6(0.5) == Decimal("0.500000")
    assert str(round6(2 / 3)) == "0.666667"


def test_family_params():
    assert family_params("k33") == (1, 3)
    assert family_params("k2t", 2) == (2, 2)
    assert family_params("general", None, 4) == (1, 4)
    with pytest.raises(HypothesisViolated):
        family_params("general")


@pytest.mark.parametrize("q, t, r", [(2, 1, 3), (3, 1, 4), (2, 1, 4), (3, 2, 3), (4, 3, 3), (2, 1, 5)])
def test_general_rows(q, t, r):
    row = bounds_row(q, t, r)
    s = sum(q ** i for i in range(r - 1))
    assert row.n * t == expected_vertex_count_general(q, r)
    assert row.m >= (q ** (2 * r - 2) - 1) * (q - 1) / (2 * t * s)
    assert row.ratio > 0 and row.target > 0


def test_csv_format():
    text = format_csv([bounds_row(2, 1, 3)])
    assert text == "q,t,r,n,m,a,b,ratio,target\n2,1,3,5,8,3,3,0.547192,0.500000\n"
