from __future__ import annotations

import json
from fractions import Fraction as F
from pathlib import Path

import pytest

from lieform.catalog import sl, su
from lieform.cli import main
from lieform.io import SchemaError, algebra_from_json, algebra_to_json, load_input, parse_rational
from lieform.report import SCHEMA

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("text,value", [("3", F(3)), ("-1/2", F(-1, 2)), ("−2/4", F(-1, 2)), (5, F(5))])
def test_parse_rational(text, value):
    assert parse_rational(text, "$") == value


@pytest.mark.parametrize("bad", ["1/0", "x", "1.5", True, None, [1]])
def test_parse_rational_rejects(bad):
    with pytest.raises(SchemaError):
        parse_rational(bad, "$.x")


@pytest.mark.parametrize("alg", [sl(2), sl(3), su(2)])
def test_algebra_json_round_trip(alg):
    back = algebra_from_json(json.loads(json.dumps(algebra_to_json(alg))))
    assert algebra_to_json(back) == algebra_to_json(alg)
    assert back.theta == alg.theta


def test_schema_error_location():
    data = json.loads((DATA / "zero_denominator.json").read_text())
    with pytest.raises(SchemaError) as exc:
        algebra_from_json(data)
    assert exc.value.location == "$.brackets[0][2][0][1]"


def test_missing_and_unknown_fields():
    data = algebra_to_json(sl(2))
    with pytest.raises(SchemaError, match="unknown field"):
        algebra_from_json({**data, "colour": 1})
    del data["basis"]
    with pytest.raises(SchemaError, match="missing field 'basis'"):
        algebra_from_json(data)


def test_pair_with_relative_algebra_path():
    kind, name, g, h = load_input(DATA / "sl2_so2.json")
    assert (kind, name, g.dim, h.dim) == ("pair", "sl2/so2", 3, 1)


def test_cohomology_command(capsys):
    assert run(capsys, "cohomology", DATA / "sl2.json")[:2] == (0, "1,0,0,1\n")
    assert run(capsys, "cohomology", DATA / "sl2_so2.json", "--relative")[:2] == (0, "1,0,1\n")
    assert run(capsys, "cohomology", "sl2/so1,1", "--relative")[:2] == (0, "1,0,1\n")
    assert run(capsys, "cohomology", DATA / "sl2.json", "--cap", "1")[:2] == (0, "1,0\n")


def test_primitives_and_transgress(capsys):
    code, out, _ = run(capsys, "primitives", DATA / "sl2.json")
    assert code == 0 and out.startswith("3\t") and "rank 1" in out
    code, out, _ = run(capsys, "transgress", DATA / "sl2.json")
    assert code == 0 and out.startswith("a1 (3)")


@pytest.mark.parametrize("fname", ["zero_denominator.json", "truncated.json", "missing.json"])
def test_schema_errors_exit_2(capsys, fname):
    code, out, err = run(capsys, "cohomology", DATA / fname)
    assert code == 2 and "schema error" in err and not out


def test_relative_needs_pair(capsys):
    assert run(capsys, "cohomology", DATA / "sl2.json", "--relative")[0] == 2


def test_jacobi_failure_exits_3(capsys):
    code, _, err = run(capsys, "cohomology", DATA / "jacobi_broken.json")
    assert code == 3 and "witness" in err


def test_non_subalgebra_exits_3(capsys):
    assert run(capsys, "check", DATA / "not_closed.json")[0] == 3


def test_bad_condition_and_cap(capsys):
    assert run(capsys, "check", "sl2/so2", "--conditions", "i,ix")[0] == 2
    assert run(capsys, "check", "sl2/so2", "--cap", "-1")[0] == 2


def test_check_writes_report(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, _, _ = run(capsys, "check", DATA / "sl2_so11_inline.json", "-o", out)
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["schema"] == SCHEMA
    (entry,) = doc["pairs"]
    assert entry["verdict"]["reason"] == "RANK_CRITERION"
    assert entry["conditions"]["i"]["witness"]["degree"] == 2


def test_check_markdown(capsys):
    code, out, _ = run(capsys, "check", "sl2/so2", "--format", "markdown", "--conditions", "i,vii")
    assert code == 0 and "| sl2/so2 |" in out and "NONE_FOUND" in out


def test_catalog_family_and_verify(capsys, tmp_path):
    code, out, _ = run(capsys, "catalog", "run", "--family", "sl2", "-o", tmp_path)
    assert code == 0 and "sl2/so1,1" in out
    doc = json.loads((tmp_path / "report.json").read_text())
    assert [e["name"] for e in doc["pairs"]] == ["sl2/0", "sl2/so1,1", "sl2/so2"]
    assert (tmp_path / "report.md").exists()
    code, out, _ = run(capsys, "verify-witness", tmp_path / "report.json")
    assert code == 0 and out.count("verified") == 5 and "FAILED" not in out


def test_unknown_family(capsys):
    assert run(capsys, "catalog", "run", "--family", "e8")[0] == 2


def test_tampered_witness_fails(capsys, tmp_path):
    run(capsys, "check", "sl2/so1,1", "-o", tmp_path / "r.json")
    doc = json.loads((tmp_path / "r.json").read_text())
    doc["pairs"][0]["conditions"]["i"]["witness"]["primitive"][0]["coef"] = "2"
    (tmp_path / "r.json").write_text(json.dumps(doc))
    code, out, _ = run(capsys, "verify-witness", tmp_path / "r.json")
    assert code == 4 and "(i)\tFAILED" in out
