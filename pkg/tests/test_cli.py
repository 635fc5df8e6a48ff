import csv
import io
import json

import pytest

from swstream.cli import BENCH_COLUMNS, main
from swstream.model import ProblemInstance
from swstream.oracle import brute_ksmin


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_then_run(tmp_path, capsys):
    path = tmp_path / "inst.txt"
    assert main(["gen", "--n", "40", "--k", "7", "--r", "9", "--l", "2", "--seed", "3",
                 "--output", str(path)]) == 0
    inst = ProblemInstance.from_text(path.read_text())
    assert (inst.n, inst.k, inst.r, inst.l) == (40, 7, 9, 2)
    answers = tmp_path / "out.txt"
    code, out, _ = _run(capsys, "run", "--algo", "ksmin", "--input", str(path),
                        "--output", str(answers))
    assert code == 0
    record = json.loads(out)
    assert record["verified"] and record["input_passes"] == 3
    assert list(map(int, answers.read_text().split())) == brute_ksmin(inst.values, 7, 2)


@pytest.mark.parametrize("family", ["random", "hard-min", "hard-maj"])
def test_gen_families(family, capsys):
    code, out, _ = _run(capsys, "gen", "--family", family, "--n", "24", "--k", "8", "--m", "2")
    assert code == 0
    inst = ProblemInstance.from_text(out)
    assert inst.n == (16 if family == "hard-min" else 24)


def test_run_csv_and_even_rounds(capsys):
    code, out, _ = _run(capsys, "run", "--algo", "comm-smin", "--n", "30", "--k", "10",
                        "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[0]["rounds"] == "3" and rows[0]["verified"] == "True"
    code, _, err = _run(capsys, "run", "--algo", "comm-smin", "--n", "30", "--k", "10",
                        "--rounds", "4")
    assert code != 0 and "odd" in err


def test_verify_reports_corruption(capsys):
    code, out, _ = _run(capsys, "verify", "--algo", "small-int", "--n", "50", "--k", "9",
                        "--r", "6", "--count", "5")
    assert code == 0 and "5/5" in out
    code, out, _ = _run(capsys, "verify", "--algo", "two-pass", "--n", "50", "--k", "9",
                        "--corrupt-window", "4")
    assert code == 1 and "window 4" in out


def test_bench_is_deterministic(capsys, monkeypatch):
    argv = ["bench", "--algos", "two-pass,comm-smin", "--n-list", "40,80", "--rounds-list", "3,5",
            "--repeats", "2", "--verify"]
    monkeypatch.setenv("SWSTREAM_SEED", "11")
    _, first, _ = _run(capsys, *argv)
    _, second, _ = _run(capsys, *argv, "--jobs", "2")
    assert first == second
    rows = list(csv.DictReader(io.StringIO(first)))
    assert list(rows[0]) == BENCH_COLUMNS
    assert len(rows) == 2 * 2 + 2 * 2 * 2
    assert {r["seed"] for r in rows} == {"11", "12"}
    assert all(r["verified"] == "True" for r in rows)


def test_bad_input_is_an_error(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("3 2 5 1\n1 2\n")
    code, _, err = _run(capsys, "run", "--algo", "baseline", "--input", str(path))
    assert code == 2 and "error" in err
