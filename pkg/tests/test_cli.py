import json
import subprocess
import sys

import pytest

from hopflat.certificate import AxiomFailure, DimensionMismatch, ParseError
from hopflat.cli import dumps, emit_algebra, emit_inclusion, main, parse_algebra, parse_algebra_doc, run
from hopflat.zoo import CORPUS, builtin_algebra, builtin_inclusion


def run_cli(tmp_path, *argv):
    out = tmp_path / "report.json"
    code = main([*argv, "--out", str(out)])
    return code, json.loads(out.read_text(encoding="utf-8"))


@pytest.mark.parametrize("name", list(CORPUS) + [n + "*" for n in CORPUS])
def test_round_trip(name):
    h = builtin_algebra(name)
    assert parse_algebra(dumps(emit_algebra(h))) == h


def test_corrupted_mult_names_associativity():
    doc = emit_algebra(builtin_algebra("S3"))
    doc["mult"][1][1][0] = 2
    with pytest.raises(AxiomFailure) as err:
        parse_algebra(json.dumps(doc))
    assert err.value.axiom == "associativity"


def test_missing_antipode_is_solved_and_echoed(tmp_path):
    doc = emit_algebra(builtin_algebra("sweedler"))
    del doc["antipode"], doc["unit"]
    h, info = parse_algebra_doc(doc)
    assert h == builtin_algebra("sweedler")
    assert info["antipode_solved"]
    path = tmp_path / "sw.json"
    path.write_text(json.dumps(doc))
    code, report = run_cli(tmp_path, "verify", str(path))
    assert code == 0
    assert report["solved_antipode"] == [list(r) for r in h.antipode]


def test_parse_errors_carry_context(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"rank": 2,\n "mult": [}')
    code, report = run_cli(tmp_path, "verify", str(bad))
    assert code == 2
    assert f"{bad}:2:" in report["input_error"]
    doc = emit_algebra(builtin_algebra("C2"))
    doc["counit"] = [1]
    with pytest.raises(DimensionMismatch, match="counit"):
        parse_algebra_doc(doc)
    doc = emit_algebra(builtin_algebra("C2"))
    doc["mult"][0][0][0] = "one"
    with pytest.raises(ParseError, match=r"mult\[0\]\[0\]\[0\]"):
        parse_algebra_doc(doc)


def test_rational_base_accepts_fractions():
    doc = emit_algebra(builtin_algebra("C2"))
    doc["base"] = "rationals"
    h = parse_algebra(json.dumps(doc))
    assert str(h.fiber) == "Q"
    assert parse_algebra(dumps(emit_algebra(h))) == h


def test_flat_cert_example(tmp_path):
    code, report = run_cli(tmp_path, "flat-cert", "builtin:S3", "--sub", "builtin:A3-in-S3")
    assert code == 0
    (cert,) = report["certificates"]
    assert cert["verdict"] == "faithfully-flat"
    assert cert["witness"]["free_basis_names"] == ["e", "s"]


def test_normality_negative_fact_passes(tmp_path):
    code, report = run_cli(tmp_path, "normality", "builtin:S3", "--sub", "builtin:C2-in-S3")
    assert code == 0
    (cert,) = report["certificates"]
    assert cert["verdict"] == "not-normal"
    assert cert["counterexample"]["a"] and cert["counterexample"]["b"]


def test_integrals_example(tmp_path):
    code, report = run_cli(tmp_path, "integrals", "builtin:sweedler")
    assert code == 0
    rank = next(c for c in report["certificates"] if c["claim"] == "integral-rank-one")
    w = rank["witness"]
    assert (w["rank_left"], w["rank_right"]) == (1, 1)
    assert w["fiber_ranks"] == {k: {"left": 1, "right": 1} for k in ("F2", "F3", "F5", "Q")}
    assert w["left_basis"] == [[0, 0, 0, 1]] and w["right_basis"] == [[0, 0, 1, 0]]


def test_fibers_flag(tmp_path):
    code, report = run_cli(tmp_path, "integrals", "builtin:C3", "--fibers", "Q,7")
    assert code == 0
    assert report["flags"]["fibers"] == ["Q", "F7"]
    code, report = run_cli(tmp_path, "integrals", "builtin:C3", "--fibers", "Q,4")
    assert code == 2


def test_saturation_scope_stop(tmp_path):
    code, report = run_cli(tmp_path, "quotient", "builtin:C2*", "--sub", "builtin:C2-to-C2*")
    assert code == 0
    assert report["certificates"][0]["verdict"].startswith("scope-stop")
    code, report = run_cli(tmp_path, "quotient", "builtin:C2*", "--sub", "builtin:C2-to-C2*",
                           "--strict-saturation")
    assert code == 1
    assert "implementation bug" in report["note"]


def test_input_errors_exit_two(tmp_path):
    assert run_cli(tmp_path, "verify", "builtin:S4")[0] == 2
    assert run_cli(tmp_path, "quotient", "builtin:S3")[0] == 2
    assert run_cli(tmp_path, "proj-cert", "builtin:S3", "--sub", "builtin:C2-in-S3")[0] == 2
    # inclusion into a different algebra than the one named
    assert run_cli(tmp_path, "normality", "builtin:D4", "--sub", "builtin:A3-in-S3")[0] == 2


def test_inclusion_file(tmp_path):
    path = tmp_path / "inc.json"
    path.write_text(dumps(emit_inclusion(builtin_inclusion("C4-in-D4"))))
    code, report = run_cli(tmp_path, "quotient", "builtin:D4", "--sub", str(path))
    assert code == 0
    assert all(c["passed"] for c in report["certificates"])


def test_emit_then_verify(tmp_path):
    out = tmp_path / "q8.json"
    assert main(["emit", "builtin:Q8", "--out", str(out)]) == 0
    code, report = run_cli(tmp_path, "verify", str(out))
    assert code == 0


def test_every_certificate_has_evidence():
    report = run("quotient", ["builtin:S3"], "builtin:A3-in-S3").to_dict()
    for c in report["certificates"]:
        assert c["witness"] or c["counterexample"]


def test_all_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["all", "--out", str(a)]) == 0
    assert main(["all", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    report = json.loads(a.read_text())
    assert report["format_version"] == 1
    assert report["summary"]["failed"] == []


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hopflat", "verify", "builtin:C2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["certificates"][0]["verdict"] == "hopf-algebra"
