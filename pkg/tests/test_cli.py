import json
import subprocess
import sys

import pytest

from homassoc import HomAlgebra, data_path, example_2d
from homassoc.cli import main


def fixture(name):
    return str(data_path(name))


def run(*argv):
    return main([str(a) for a in argv])


def test_validate(capsys):
    assert run("validate", fixture("hom_assoc_2d.json")) == 0
    assert capsys.readouterr().out.strip() == "valid (multiplicative)"
    assert run("validate", fixture("dual_numbers.json")) == 0


def test_validate_reports_mutated_triple(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(example_2d().with_constant(0, 1, 0, 1).to_dict()))
    assert run("validate", p) == 1
    out = capsys.readouterr().out
    assert "hom-associativity violated at (e1, e2, e1)" in out or "hom-associativity violated at" in out


def test_schema_error_exit_code(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text('{"dimension": 2, "mu": [], "alpha": []}')
    assert run("validate", p) == 2
    assert "mu" in capsys.readouterr().err
    assert run("validate", tmp_path / "missing.json") == 2
    assert run("frobnicate") == 2


def test_cohomology_dual_numbers_untwisted(capsys):
    assert run("cohomology", fixture("dual_numbers.json"), "--max-degree", 4) == 0
    rep = json.loads(capsys.readouterr().out)
    assert [row.get("dimH") for row in rep["degrees"]] == [None, 1, 1, 1]
    assert rep["checks"]["mu_is_coboundary"] is True
    assert run("cohomology", "dual-numbers", "--max-degree", 1) == 2


def test_cohomology_summary_with_out(tmp_path, capsys):
    out = tmp_path / "c.json"
    assert run("cohomology", fixture("hom_assoc_2d.json"), "--max-degree", 3, "--out", out) == 0
    assert "class of mu is zero: True" in capsys.readouterr().out
    assert json.loads(out.read_text())["degrees"][2]["dimH"] == 2


def test_op_delta_of_identity_is_mu(tmp_path):
    out = tmp_path / "d.json"
    assert run("op", "delta", fixture("hom_assoc_2d.json"), "id", "--out", out) == 0
    mu = example_2d().to_dict()["mu"]
    assert json.loads(out.read_text()) == {"degree": 2, "coeffs": mu}


def test_op_cup_circ_i_and_homotopy(tmp_path, capsys):
    A = fixture("hom_assoc_2d.json")
    assert run("op", "cup", A, "id", "id") == 0
    assert json.loads(capsys.readouterr().out)["coeffs"] == example_2d().to_dict()["mu"]
    assert run("op", "homotopy", A, "mu", "mu", "id") == 0
    data = json.loads(capsys.readouterr().out)
    assert data["degree"] == 3
    assert {x for a in data["coeffs"] for b in a for c in b for x in c} == {"0"}
    assert run("op", "circ_i", A, "mu", "mu", "--index", 1) == 0
    assert json.loads(capsys.readouterr().out)["degree"] == 3
    assert run("op", "circ_i", A, "mu", "mu") == 2
    assert run("op", "circ_i", A, "mu", "mu", "--index", 2) == 2
    assert run("op", "cup", A, "id") == 2


def test_op_reads_cochain_files(tmp_path, capsys):
    f = tmp_path / "f.json"
    f.write_text(json.dumps({"degree": 1, "coeffs": [["1", "0"], ["0", "1"]]}))
    assert run("op", "bracket", "hom-assoc-2d", f, "mu") == 0
    assert json.loads(capsys.readouterr().out)["degree"] == 2
    g = tmp_path / "g.json"
    g.write_text(json.dumps({"degree": 1, "coeffs": [["1", "0"], ["1", "0"]]}))
    assert run("op", "delta", "hom-assoc-2d", g) == 2


def test_verify_exit_codes_and_reproducibility(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["verify", "dual-numbers-twist", "--max-degree", 5, "--samples", 2, "--seed", 4,
            "--identity", "delta_squared", "--identity", "cup_assoc"]
    assert run(*args, "--out", a) == 0
    assert run(*args, "--out", b) == 0
    assert a.read_bytes() == b.read_bytes()
    rep = json.loads(a.read_text())
    assert rep["plan"]["seed"] == 4 and [r["name"] for r in rep["identities"]] == ["delta_squared", "cup_assoc"]


def test_verify_plan_file(tmp_path):
    plan = tmp_path / "plan.json"
    plan.write_text(json.dumps({"identities": ["jacobi"], "max_degree": 4, "samples": 2,
                                "cocycle_patterns": [[1, 1, 2]]}))
    out = tmp_path / "r.json"
    assert run("verify", "hom-assoc-2d", "--plan", plan, "--out", out) == 0
    assert json.loads(out.read_text())["summary"] == {"pass": 1, "fail": 0, "skipped": 0}
    plan.write_text(json.dumps({"bogus": 1}))
    assert run("verify", "hom-assoc-2d", "--plan", plan) == 2


def test_verify_corrupted_algebra_fails(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(example_2d().with_constant(0, 1, 0, 1).to_dict()))
    assert run("verify", p, "--samples", 1) == 1
    out = tmp_path / "r.json"
    assert run("verify", p, "--samples", 2, "--max-degree", 4, "--identity", "cup_assoc",
               "--allow-invalid", "--out", out) == 1
    rep = json.loads(out.read_text())
    assert rep["identities"][0]["counterexample"]["trial_seed"]


def test_twist(tmp_path, capsys):
    assert run("twist", fixture("dual_numbers.json"), fixture("hom_kill_x.json")) == 0
    A = HomAlgebra.from_dict(json.loads(capsys.readouterr().out))
    assert A.validate().valid
    ident = tmp_path / "id.json"
    ident.write_text("[[1, 0], [0, 1]]")
    out = tmp_path / "t.json"
    assert run("twist", "dual-numbers", ident, "--name", "dual-numbers", "--out", out) == 0
    assert HomAlgebra.from_dict(json.loads(out.read_text())) == HomAlgebra.from_dict(
        json.loads(open(fixture("dual_numbers.json")).read()))
    swap = tmp_path / "swap.json"
    swap.write_text('{"alpha": [[0, 1], [1, 0]]}')
    assert run("twist", "dual-numbers", swap) == 1


def test_emitted_json_round_trips(tmp_path):
    out = tmp_path / "t.json"
    assert run("twist", "dual-numbers", fixture("hom_negate_x.json"), "--out", out) == 0
    A = HomAlgebra.from_dict(json.loads(out.read_text()))
    assert json.loads(json.dumps(A.to_dict())) == json.loads(out.read_text())


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "homassoc", "validate", "k-times-k"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "valid" in proc.stdout
