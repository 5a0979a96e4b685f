import json
from pathlib import Path

import pytest

from asgder.cli import main

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def run(capsys, *args):
    code = main([str(a) for a in args])
    out, err = capsys.readouterr()
    return code, out, err


def test_koszul_check_default(capsys):
    code, out, _ = run(capsys, "koszul-check")
    js = json.loads(out)
    assert code == 0 and js["confluent"] and js["critical_count"] == 3
    assert all(c["agrees"] for c in js["critical_monomials"])


def test_koszul_check_dual_with_basis(capsys):
    code, out, _ = run(capsys, "koszul-check", "--preset", "agd-dual", "--max-arity", "4")
    assert code == 0 and json.loads(out)["confluent"]


def test_koszul_check_from_file(tmp_path, capsys):
    f = tmp_path / "q.json"
    f.write_text(json.dumps({"generators": [{"name": "m", "arity": 2}], "relators": ["m o1 m - m o2 m"]}))
    code, out, _ = run(capsys, "koszul-check", f)
    assert code == 0 and json.loads(out)["critical_count"] == 1


def test_koszul_check_rejects_non_quadratic(tmp_path, capsys):
    f = tmp_path / "q.json"
    f.write_text(json.dumps({"generators": [{"name": "m", "arity": 2}], "relators": ["m"]}))
    code, _, err = run(capsys, "koszul-check", f)
    assert code == 2 and json.loads(err)["error"] == "NotQuadratic"


@pytest.mark.parametrize("name, expected", [
    ("nilpotent.json", 0), ("dual_numbers.json", 0), ("idempotent_bad.json", 1), ("broken.json", 2),
])
def test_validate_exit_codes(capsys, name, expected):
    code, out, err = run(capsys, "validate", SAMPLES / name)
    assert code == expected
    if expected == 2:
        assert "zero denominator" in json.loads(err)["message"]
    else:
        assert json.loads(out)["valid"] == (expected == 0)


def test_validate_reports_violations(capsys):
    _, out, _ = run(capsys, "validate", SAMPLES / "idempotent_bad.json")
    ids = {v["identity"] for v in json.loads(out)["violations"]}
    assert "h(ab) = h(a)b + a h(b)" in ids


def test_invalid_json_file(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text("{\n  oops")
    code, _, err = run(capsys, "validate", f)
    assert code == 2 and str(f) + ":2:" in json.loads(err)["message"]


def test_cohomology_json(capsys):
    code, out, _ = run(capsys, "cohomology", SAMPLES / "nilpotent.json", "--max-degree", "2", "--with-assder", "--les")
    js = json.loads(out)
    assert code == 0 and js["h1_agrees"]
    degrees = {d["degree"]: d["dim_H"] for d in js["degrees"]}
    assert degrees == {1: 1, 2: 2}


def test_cohomology_cap(capsys):
    code, _, err = run(capsys, "cohomology", SAMPLES / "dual_numbers.json", "--max-degree", "6", "--cap", "10")
    assert code == 2 and json.loads(err)["error"] == "ResourceGuard"


def test_deform_and_lift(capsys):
    code, out, _ = run(capsys, "deform", SAMPLES / "dual_numbers.json", SAMPLES / "dual_numbers_deformation.json",
                       "--lift")
    js = json.loads(out)
    assert code == 0 and js["deformation_equations"]["holds"]
    assert js["order_1"]["equivalent"] and js["lift"]["liftable"] and js["lift"]["revalidated"]


@pytest.mark.parametrize("name", ["dual_numbers_homotopy.json", "dg_induced_homotopy.json"])
def test_homotopy_check(capsys, name):
    code, out, _ = run(capsys, "homotopy-check", SAMPLES / name)
    js = json.loads(out)
    assert code == 0 and js["holds"] and js["agree"]


@pytest.mark.parametrize("which", ["dual", "cooperad"])
def test_dump_table(capsys, which):
    code, out, _ = run(capsys, "dump-table", "--which", which, "--max-arity", "3")
    assert code == 0 and json.loads(out)


def test_table_format(capsys):
    code, out, _ = run(capsys, "validate", SAMPLES / "nilpotent.json", "--format", "table")
    assert code == 0 and "valid: yes" in out


def test_selftest_subset(capsys):
    code, out, _ = run(capsys, "selftest", "--only", "1,2,3")
    js = json.loads(out)
    assert code == 0 and js["passed"] == js["total"] == 3


def test_output_is_byte_identical(capsys):
    args = ("cohomology", SAMPLES / "dual_numbers.json", "--max-degree", "3", "--witnesses")
    first = run(capsys, *args)
    assert first == run(capsys, *args)


@pytest.mark.parametrize("args", [[], ["no-such-command"], ["selftest", "--only", "11"], ["cohomology"]])
def test_bad_arguments(capsys, args):
    assert run(capsys, *args)[0] == 2
