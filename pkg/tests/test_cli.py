from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from grouptk.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def lines(text):
    return [json.loads(x) for x in text.splitlines() if x.strip()]


# -- analyze ---------------------------------------------------------------------------------------


def test_analyze_cyclic():
    code, out, _ = run("analyze", "--group", "cyclic:6", "--T", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["structure"]["rank"] == 1
    assert doc["structure"]["fitting_order"] == 6
    assert doc["dichotomy"]["branch_satisfied"] == "a"
    assert all(v in ("pass", "skipped:guard") for v in doc["checks"].values())


def test_analyze_s3():
    code, out, _ = run("analyze", "--group", "sym:3", "--T", "2", "--checks", "dichotomy,trichotomy")
    assert code == 0
    doc = json.loads(out)
    assert doc["structure"]["rank"] == 2
    d = doc["dichotomy"]
    assert d["nilpotent_index"] == 2 and d["branch_b"]
    assert d["best_special_witness"]["C_order"] == 2
    assert set(doc["checks"]) == {"dichotomy", "trichotomy"}


def test_analyze_inline_json_and_pretty():
    spec = json.dumps({"degree": 4, "generators": ["(1 2 3 4)", "(1 3)"]})
    code, out, _ = run("analyze", "--group", spec, "--checks", "", "--json")
    assert code == 0
    assert "\n  " in out
    assert json.loads(out)["structure"]["order"] == 8


@pytest.mark.parametrize("argv", [
    ["analyze", "--group", "sym:"],
    ["analyze", "--group", "nonsense:3"],
    ["analyze", "--group", "{broken json"],
    ["analyze", "--group", "sym:3", "--checks", "no-such-check"],
    ["analyze", "--group", "sym:3", "--T", "x"],
    ["analyze"],
    ["frobnicate"],
    ["heisenberg", "--n", "1"],
    ["cohomology", "--p", "4", "--r", "1"],
    ["cohomology", "--p", "3", "--r", "-1"],
    ["bounds", "thm2-8", "--T", "3"],
    ["bounds", "lem2-15", "--t", "0"],
    ["bounds", "nope"],
    ["scan", "--catalog", "/no/such/file.json"],
    ["scan", "--catalog", "[{\"label\": \"x\"}]"],
])
def test_input_errors_exit_2(argv):
    code, out, err = run(*argv)
    assert code == 2
    assert out == ""
    assert err.startswith("grouptk:")


def test_missing_field_message():
    _, _, err = run("bounds", "thm2-8", "--T", "3")
    assert "missing required field 'r'" in err


def test_guard_exit_3():
    code, _, err = run("analyze", "--group", "sym:6", "--guard-order", "100")
    assert code == 3 and "guard" in err


def test_env_guard(monkeypatch):
    monkeypatch.setenv("GTK_GUARD_ORDER", "50")
    assert run("analyze", "--group", "sym:5", "--checks", "")[0] == 3
    monkeypatch.setenv("GTK_GUARD_ORDER", "lots")
    assert run("analyze", "--group", "sym:3", "--checks", "")[0] == 2


# -- scan ---------------------------------------------------------------------------------------------


def test_scan_fitting_dominance_all_pass():
    code, out, _ = run("scan", "--checks", "fitting-dominance")
    rows = lines(out)
    assert code == 0 and len(rows) >= 60
    assert {r["status"] for r in rows} == {"pass"}
    assert all("wall_time" not in r for r in rows)


def test_scan_section_vs_index_all_pass():
    code, out, _ = run("scan", "--checks", "section-vs-index")
    assert code == 0 and {r["status"] for r in lines(out)} == {"pass"}


def test_scan_empty_checks():
    assert run("scan", "--checks", "") == (0, "", "")


def test_scan_deterministic_and_parallel_order():
    cat = json.dumps(["sym:4", "cyclic:12", "dihedral:6", "alt:4", "heisenberg:3", "elem_abelian:2:3"])
    args = ["scan", "--catalog", cat, "--checks", "rank-monotone,dichotomy,burnside-miller"]
    a = run(*args)
    b = run(*args)
    c = run(*args, "--jobs", "3")
    assert a == b == c
    rows = lines(a[1])
    assert [(r["label"], r["check"]) for r in rows][:3] == [
        ("sym:4", "rank-monotone"), ("sym:4", "dichotomy"), ("sym:4", "burnside-miller")]
    assert rows[2]["details"] == {"applicable": False}


def test_scan_timing_and_guard_skip():
    cat = json.dumps([{"label": "big", "spec": "sym:7"}, "cyclic:5"])
    code, out, _ = run("scan", "--catalog", cat, "--checks", "bsgs-order", "--timing", "--guard-order", "1000")
    rows = lines(out)
    assert code == 0
    assert rows[0]["status"] == "skipped:guard" and rows[1]["status"] == "pass"
    assert "wall_time" in rows[1]


def test_scan_wrong_declared_order_fails_with_counterexample():
    cat = json.dumps([{"label": "liar", "spec": "sym:3", "order": 7}])
    code, out, _ = run("scan", "--catalog", cat, "--checks", "bsgs-order")
    (row,) = lines(out)
    assert code == 1 and row["status"] == "fail"
    assert row["details"]["counterexample"] == {"expected_order": 7, "order": 6}


def test_scan_catalog_file(tmp_path):
    path = tmp_path / "cat.json"
    path.write_text(json.dumps({"provenance": "test", "groups": ["cyclic:4", "sym:3"]}))
    code, out, _ = run("scan", "--catalog", str(path), "--checks", "gillam")
    assert code == 0 and [r["label"] for r in lines(out)] == ["cyclic:4", "sym:3"]


# -- heisenberg / cohomology / bounds ---------------------------------------------------------------


def test_heisenberg_all_flags():
    code, out, _ = run("heisenberg", "--n", "2")
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "pass"
    assert [r["check"] for r in doc["reports"]] == ["abelian-index", "phi-action", "psi-action", "free-action-s3"]
    assert "derivations" not in doc["reports"][-1]


def test_heisenberg_abelian_index():
    code, out, _ = run("heisenberg", "--n", "3", "--abelian-index")
    (rep,) = json.loads(out)["reports"]
    assert code == 0 and rep["min_index"] == 3 and rep["witness_order"] == 9


def test_heisenberg_verbose_and_guard():
    code, out, _ = run("heisenberg", "--n", "3", "--verify-free", "--verbose")
    assert code == 0 and len(json.loads(out)["reports"][0]["derivations"]) == 26
    assert run("heisenberg", "--n", "9", "--abelian-index")[0] == 3


def test_cohomology_command():
    code, out, _ = run("cohomology", "--p", "3", "--r", "2", "--max-deg", "4")
    doc = json.loads(out)
    assert code == 0 and doc["dims"] == [1, 2, 3, 4, 5] and doc["match"] is True
    code, out, _ = run("cohomology", "--p", "2", "--r", "0", "--max-deg", "3")
    assert json.loads(out)["dims"] == [1, 0, 0, 0]


def test_bounds_command():
    code, out, _ = run("bounds", "thm2-8", "--T", "3", "--r", "2")
    assert code == 0 and json.loads(out) == [{"formula": "thm2-8", "inputs": {"T": 3, "r": 2}, "value": 36}]
    code, out, _ = run("bounds", "all", "--T", "2", "--r", "1")
    assert {row["formula"] for row in json.loads(out)} == {"thm2-8", "cor2-17"}


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "grouptk", "bounds", "lem5-2", "--d", "3", "--r", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)[0]["value"] == 100
