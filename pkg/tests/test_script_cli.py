import io
import json
from pathlib import Path

import pytest

from doubleneg import sequent
from doubleneg.cli import run_cli
from doubleneg.natded import nd_catalog
from doubleneg.script import ScriptError, dumps, load, loads, to_dict
from doubleneg.sequent import SkRule, derivation_catalog
from doubleneg.suite import CASE_NAMES, paper_suite

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_cli(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def catalogs():
    return {**derivation_catalog(), **nd_catalog()}


# --- proof scripts


@pytest.mark.parametrize("name", sorted(catalogs()))
def test_fixture_matches_catalog(name):
    path = FIXTURES / f"{name}.proof.json"
    assert load(path) == catalogs()[name]


@pytest.mark.parametrize("name", sorted(catalogs()))
def test_script_round_trip(name):
    p = catalogs()[name]
    assert loads(dumps(p)) == p
    assert loads(dumps(p, compact=True)) == p
    text = (FIXTURES / f"{name}.proof.json").read_text(encoding="utf-8")
    assert dumps(loads(text)) == dumps(p)


def test_script_shapes():
    sk = to_dict(derivation_catalog()["sk-cut-roundtrip"])
    assert sk["calculus"] == "sk"
    assert sk["root"]["cutFormula"] == "~~A"
    assert "principal" not in sk["root"]
    nd = to_dict(nd_catalog()["nd-dne"])
    assert nd["calculus"] == "nd"
    assert nd["root"]["discharge"] == "1"
    assert nd["root"]["formula"] == "A"


@pytest.mark.parametrize("text", [
    "not json",
    '{"calculus": "lk", "root": {}}',
    '{"calculus": "sk"}',
    '{"calculus": "sk", "root": {"rule": "Nope", "sequent": "A => A"}}',
    '{"calculus": "sk", "root": {"rule": "Ax", "sequent": "A => => A", "principal": "A"}}',
    '{"calculus": "nd", "root": {"rule": "Hyp", "formula": "A |"}}',
    '{"calculus": "nd", "root": {"rule": "Hyp", "formula": "A", "premises": 3}}',
])
def test_bad_scripts(text):
    with pytest.raises(ScriptError):
        loads(text)


def test_unicode_script_input():
    text = '{"calculus": "sk", "root": {"rule": "Ax", "sequent": "¬A ⇒ ¬A", "principal": "¬A"}}'
    assert loads(text) == sequent.ax("~A")


# --- CLI


def test_check_sk():
    code, out, _ = run("check", str(FIXTURES / "sk-dni.proof.json"))
    assert code == 0
    assert out.strip() == "valid: A => ~~A"


def test_check_unicode():
    code, out, _ = run("--unicode", "check", str(FIXTURES / "sk-dne.proof.json"))
    assert code == 0 and out.strip() == "valid: ¬¬A ⇒ A"
    code, out, _ = run("check", "--unicode", str(FIXTURES / "sk-dne.proof.json"))
    assert out.strip() == "valid: ¬¬A ⇒ A"


def test_check_nd_modes():
    path = str(FIXTURES / "nd-dne.proof.json")
    code, out, _ = run("check", path)
    assert code == 0 and out.strip() == "valid: ~~A |- A"
    code, out, _ = run("check", "--mode", "intuitionistic", path)
    assert code == 1 and "classical-only rule" in out


def test_check_missing_file():
    code, out, err = run("check", "missing.json")
    assert code == 2
    assert "file not found" in err


def test_check_invalid_proof(tmp_path):
    p = derivation_catalog()["sk-dni"]
    bad = sequent.SkProof(SkRule.RNeg, sequent.Sequent.of("A => ~A"), p.premises, p.principal)
    path = tmp_path / "bad.proof.json"
    path.write_text(dumps(bad), encoding="utf-8")
    code, out, _ = run("check", str(path))
    assert code == 1
    assert out.startswith("invalid: root (RNeg)")


def test_check_bad_script(tmp_path):
    path = tmp_path / "bad.proof.json"
    path.write_text("{", encoding="utf-8")
    assert run("check", str(path))[0] == 2


def test_mode_on_sequent_script_is_usage_error():
    assert run("check", "--mode", "intuitionistic", str(FIXTURES / "sk-dni.proof.json"))[0] == 2


def test_normalize_command():
    path = str(FIXTURES / "nd-harmony-detour.proof.json")
    code, out, _ = run("normalize", path)
    assert code == 0
    assert out.strip().splitlines()[-1] == "normal form in 1 step(s): A |- A"
    code, out, _ = run("normalize", "--trace", path)
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 3
    assert loads(lines[0]) == nd_catalog()["nd-harmony-detour"]
    assert json.loads(lines[1])["root"] == {"rule": "Hyp", "formula": "A"}


def test_normalize_rejects_sequent_script():
    assert run("normalize", str(FIXTURES / "sk-dni.proof.json"))[0] == 2


def test_cut_eliminate_command():
    code, out, _ = run("cut-eliminate", str(FIXTURES / "sk-cut-roundtrip.proof.json"))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "before: 1 cut(s), max rank 3"
    assert lines[1] == "  root: ~~A rank 3 level 6"
    assert lines[2] == "after: 0 cut(s), max rank 0"
    assert lines[3] == "endsequent: A => A"
    assert loads("\n".join(lines[4:])) == sequent.ax("A")


def test_prove_command():
    code, out, _ = run("prove", "--logic", "intuitionistic", "~~A -> A")
    assert code == 1
    assert out.splitlines()[0] == "unprovable"
    assert "countermodel: worlds 2" in out
    code, out, _ = run("prove", "--logic", "intuitionistic", "A -> ~~A")
    assert code == 0 and out.strip() == "provable"
    code, out, _ = run("prove", "--logic", "classical", "~~A -> A")
    assert code == 0 and out.strip() == "provable"
    code, out, _ = run("prove", "--logic", "classical", "A -> B")
    assert code == 1 and "countervaluation: A=T, B=F" in out


def test_prove_parse_error():
    code, _, err = run("prove", "--logic", "classical", "A | (")
    assert code == 2
    assert "position 5" in err


def test_truth_table_command():
    code, out, _ = run("truth-table", "~~A")
    assert code == 0
    assert out.splitlines() == ["A\t~~A", "F\tF", "T\tT"]
    code, out, _ = run("--unicode", "truth-table", "~~A")
    assert out.splitlines()[0] == "A\t¬¬A"


@pytest.mark.parametrize("argv", [
    [], ["frobnicate"], ["prove", "A"], ["prove", "--logic", "modal", "A"], ["check"],
])
def test_usage_errors(argv, capsys):
    assert run(*argv)[0] == 2


def test_suite_command():
    code, out, _ = run("paper-suite")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[-1] == "10/10 passed"
    assert [l.split()[1].rstrip(":") for l in lines[1:-1]] == list(CASE_NAMES)


def test_suite_json():
    code, out, _ = run("paper-suite", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["passed"] == data["total"] == 10 and data["ok"] is True
    assert [c["name"] for c in data["cases"]] == list(CASE_NAMES)


def test_reports_are_deterministic():
    first = run("paper-suite", "--json")[1]
    second = run("paper-suite", "--json")[1]
    assert first == second
    a = run("cut-eliminate", str(FIXTURES / "sk-cut-roundtrip.proof.json"))[1]
    b = run("cut-eliminate", str(FIXTURES / "sk-cut-roundtrip.proof.json"))[1]
    assert a == b


def test_fault_injection_breaks_sk_dni(monkeypatch):
    real = sequent.RULES[SkRule.RNeg]

    def broken(premises, x):
        out = real(premises, x)
        return sequent.Sequent(out.antecedent + out.antecedent, out.succedent)

    monkeypatch.setitem(sequent.RULES, SkRule.RNeg, broken)
    report = paper_suite()
    status = {c.name: c.passed for c in report.cases}
    assert status["sk-dni"] is False
    assert not report.ok
    code, out, _ = run("paper-suite")
    assert code == 1
    assert "FAIL sk-dni" in out
    assert run("check", str(FIXTURES / "sk-dni.proof.json"))[0] == 1


def test_version_header():
    out = run("paper-suite")[1]
    assert out.splitlines()[0].startswith("doubleneg ")
