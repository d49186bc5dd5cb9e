from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from overspt.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main
from overspt.identities import CATALOG, Witness
from overspt import cli
from overspt import identities as idl


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def as_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_spt_values(capsys):
    code, doc = as_json(capsys, "spt", "--variant", "sptbar", "--n-max", "4")
    assert code == EXIT_OK and [4, 13] in doc["rows"]
    assert doc["columns"] == ["n", "value"]
    assert as_json(capsys, "spt", "--variant", "m2spt", "--n-max", "6")[1]["rows"][-1] == [6, 5]
    assert as_json(capsys, "spt", "--variant", "spt", "--n-max", "1")[1]["rows"] == [[1, 1]]


def test_table_class_sums(capsys):
    _, doc = as_json(capsys, "table", "--family", "NSbar", "--n-max", "3", "--t", "3")
    assert [r for r in doc["rows"] if r[2] == 3] == [[0, 3, 3, 2], [1, 3, 3, 2], [2, 3, 3, 2]]
    _, doc = as_json(capsys, "table", "--family", "N_S̄₂", "--n-max", "8", "--t", "5")
    assert [r[3] for r in doc["rows"] if r[2] == 8] == [3] * 5
    _, doc = as_json(capsys, "table", "--family", "Nbar", "--n-max", "0")
    assert doc["rows"] == [[0, 0, 1]]


def test_verify_pass_and_list(capsys):
    code, doc = as_json(capsys, "verify", "T2_5", "mainthm_iii", "--order", "25")
    assert code == EXIT_OK
    assert [r[0] for r in doc["rows"]] == ["T2_5", "mainthm_iii"]
    assert all(r[2] == "pass" for r in doc["rows"])
    assert set(doc["metadata"]["check_elapsed"]) == {"T2_5", "mainthm_iii"}
    code, doc = as_json(capsys, "verify", "--list")
    assert code == EXIT_OK and len(doc["rows"]) == len(CATALOG)


def test_verify_failure_exit_code(capsys, monkeypatch):
    check = CATALOG["spt5"]
    fake = idl.Check(check.check_id, check.description, 5, lambda N: Witness(4, None, "0 mod 5", 11))
    monkeypatch.setitem(CATALOG, "spt5", fake)
    code, out, err = run(capsys, "verify", "spt5", "--format", "json")
    assert code == EXIT_FAIL
    row = json.loads(out)["rows"][0]
    assert row[2:7] == ["fail", 4, None, "0 mod 5", 11]
    assert "spt5" in err


def test_unknown_id_is_usage_error_before_running(capsys, monkeypatch):
    called = []
    monkeypatch.setattr(cli, "run_check", lambda *a: called.append(a))
    code, out, err = run(capsys, "verify", "spt5", "no_such_check")
    assert code == EXIT_USAGE and "no_such_check" in err and out == "" and not called


@pytest.mark.parametrize(
    "argv",
    [
        ["spt", "--variant", "bogus", "--n-max", "3"],
        ["spt", "--n-max", "0"],
        ["table", "--family", "Q", "--n-max", "3"],
        ["bijection", "psi", "--n", "3"],
        ["verify"],
        [],
    ],
)
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_USAGE


def test_unwritable_output(capsys, tmp_path):
    code, _, err = run(capsys, "spt", "--n-max", "3", "-o", str(tmp_path / "missing" / "x.txt"))
    assert code == EXIT_USAGE and "cannot write" in err


def test_output_file(capsys, tmp_path):
    target = tmp_path / "out.csv"
    assert run(capsys, "spt", "--n-max", "3", "--format", "csv", "-o", str(target))[0] == EXIT_OK
    assert target.read_text().splitlines() == ["n,value", "1,1", "2,3", "3,5"]


def test_bijection_tables(capsys):
    _, doc = as_json(capsys, "bijection", "phi", "--n", "1")
    assert len(doc["rows"]) == 1 and doc["rows"][0][:2] == ["1", 1]
    _, doc = as_json(capsys, "bijection", "phi", "--n", "3")
    assert len(doc["rows"]) == 6
    _, doc = as_json(capsys, "bijection", "psi", "--n", "3", "--ell", "16")
    assert {(r[0], r[1]) for r in doc["rows"]} == {
        ("7+5+4", "7+5+4"), ("9+7", "9+7"), ("10+6", "6+5+5"),
        ("11+5", "11+5"), ("12+4", "6+6+4"), ("16", "4+4+4+4"),
    }


@pytest.mark.parametrize(
    "argv",
    [
        ["table", "--family", "Mbar", "--n-max", "6"],
        ["bijection", "phi", "--n", "4"],
        ["verify", "spt5", "T2_1", "--order", "20"],
    ],
)
def test_csv_and_json_carry_the_same_content(capsys, argv):
    _, doc = as_json(capsys, *argv)
    _, out, _ = run(capsys, *argv, "--format", "csv")
    reader = list(csv.reader(io.StringIO(out)))
    assert reader[0] == doc["columns"]

    def cell(v):
        if isinstance(v, (dict, list)):
            return json.dumps(v, sort_keys=True, separators=(",", ":"))
        return "" if v is None else str(v)

    assert reader[1:] == [[cell(v) for v in r] for r in doc["rows"]]


def test_payload_is_byte_stable(capsys):
    argv = ["table", "--family", "NSbar2", "--n-max", "10", "--format", "text"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]
    _, a = as_json(capsys, "verify", "T2_7", "--order", "30")
    _, b = as_json(capsys, "verify", "T2_7", "--order", "30")
    a.pop("metadata")
    b.pop("metadata")
    assert a == b


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "overspt", "spt", "--n-max", "2", "--format", "json"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["rows"] == [[1, 1], [2, 3]]
