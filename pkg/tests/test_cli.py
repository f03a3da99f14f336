import csv
import io
import json
import subprocess
import sys

import pytest

from tcores.abacus import sc_t_core_counts, t_core_counts
from tcores.cli import REGISTRY, main

EXPECTED_IDS = {
    "thm1.1", "thm1.2", "thm1.3", "cor1.4", "cor1.5", "cor1.6", "cor2.3", "lemma2.2", "eq2.1",
    "eq2.2", "gauss_r3", "thm1.7", "eq1.1", "lemma3.1", "lemma3.2", "lemma3.3", "sc9", "c5", "sc3c2",
}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_registry_ids():
    assert set(REGISTRY) == EXPECTED_IDS


def test_count_formula_sc7(capsys):
    code, out, _ = run(capsys, "count", "--t", "7", "--sc", "--method", "formula", "0..100")
    assert code == 0
    assert [int(r["count"]) for r in rows(out)] == sc_t_core_counts(100, 7)


def test_count_lattice_and_brute(capsys):
    _, lat, _ = run(capsys, "count", "--t", "4", "--method", "lattice", "--range", "0..20")
    _, bru, _ = run(capsys, "count", "--t", "4", "--method", "brute", "--range", "0..20")
    assert lat == bru
    assert [int(r["count"]) for r in rows(lat)] == t_core_counts(20, 4)


def test_count_two_cores(capsys):
    _, out, _ = run(capsys, "count", "--t", "2", "--method", "formula", "0..20")
    assert [r["n"] for r in rows(out) if r["count"] == "1"] == ["0", "1", "3", "6", "10", "15"]


def test_count_without_closed_form(capsys):
    code, _, err = run(capsys, "count", "--t", "6", "--method", "formula", "0..5")
    assert code == 2 and "no closed form in scope" in err


def test_brute_bound(capsys):
    code, _, err = run(capsys, "count", "--t", "3", "--method", "brute", "0..200")
    assert code == 2 and "oracle-bound" in err
    code, _, _ = run(capsys, "count", "--t", "3", "--method", "brute", "--oracle-bound", "10", "0..20")
    assert code == 2


@pytest.mark.parametrize("argv", [["verify", "thm9.9"], ["count", "--t", "3", "5..1"], ["count", "--t", "3", "x"], ["bogus"]])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_verify_pass_and_fail_codes(capsys):
    code, out, err = run(capsys, "verify", "eq2.1", "--precision", "60")
    assert code == 0 and all(r["pass"] == "True" for r in rows(out))
    code, out, _ = run(capsys, "verify", "sc9", "--range", "0..12")
    assert code == 1
    failing = [r["n"] for r in rows(out) if r["pass"] == "False"]
    assert failing == ["2", "6", "10"]


def test_verify_precision_floor(capsys):
    assert run(capsys, "verify", "eq2.1", "--precision", "5")[0] == 2


def test_verify_json_and_jobs_deterministic(capsys):
    _, a, _ = run(capsys, "verify", "cor1.4", "--range", "0..200", "--format", "json")
    _, b, _ = run(capsys, "verify", "cor1.4", "--range", "0..200", "--format", "json", "--jobs", "4")
    assert a == b
    data = json.loads(a)
    assert len(data) == 201 and all(r["pass"] for r in data)
    assert "power of 4" in data[2]["note"]


def test_verify_thm17_reports_fingerprints(capsys):
    code, out, _ = run(capsys, "verify", "thm1.7", "--range", "0..3", "--format", "tsv")
    recs = list(csv.DictReader(io.StringIO(out), delimiter="\t"))
    assert "genus=" in recs[1]["note"]
    assert code == 1  # n = 3 has one partition where two are claimed


def test_phi(capsys):
    _, out, _ = run(capsys, "phi", "1")
    (rec,) = rows(out)
    assert rec["disc"] == "-84"
    _, out, _ = run(capsys, "phi", "7")
    assert out == ""
    _, out, _ = run(capsys, "phi", "0")
    (rec,) = rows(out)
    assert rec["partition"] == "" and rec["disc"] == "-56"


def test_table(capsys):
    _, out, _ = run(capsys, "table", "theta3", "--precision", "5")
    assert out.splitlines()[:3] == ["0\t1/1", "1\t6/1", "2\t12/1"]


def test_csv_line_endings(capsys):
    _, out, _ = run(capsys, "count", "--t", "5", "0..3")
    assert "\r" not in out and out.endswith("\n")


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "tcores", "verify", "c5", "--range", "0..30"], capture_output=True, text=True)
    assert res.returncode == 0
    assert "31/31 passed" in res.stderr
