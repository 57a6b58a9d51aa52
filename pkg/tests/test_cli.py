import json
from pathlib import Path

import pytest

from artindiv.cli import run
from artindiv.verify import EvidenceTable

DATA = Path(__file__).resolve().parent.parent / "data"
A4 = "(1 2 3),(1 2 4)"
S3 = "(1 2),(1 2 3)"


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_group_classes_trivial_file(capsys):
    code, out, _ = call(capsys, "group", "classes", "--group", str(DATA / "trivial.group"), "--json")
    assert code == 0 and len(json.loads(out)["classes"]) == 1


def test_group_subgroups(capsys):
    code, out, _ = call(capsys, "group", "subgroups", "--group", "S4", "--json")
    doc = json.loads(out)
    assert code == 0 and len(doc["subgroups"]) == 11 and sum(s["conjugates"] for s in doc["subgroups"]) == 30


def test_fp_enumerate(capsys):
    code, out, _ = call(capsys, "fp", "enumerate", "--pres", str(DATA / "g128.pres"), "--json")
    assert code == 0 and json.loads(out)["index"] == 128
    code, out, _ = call(capsys, "fp", "enumerate", "--pres", str(DATA / "g128.pres"), "--sub", "a c^2, a^-1 d c^-1 a")
    assert code == 0 and out.strip() == "index 32"


def test_equiv_check_pattern(capsys):
    args = ["equiv", "check", "--group", "S4", "--h", A4, "--h2", S3]
    assert call(capsys, *args, "--require", "p3", "--forbid", "p4")[0] == 0
    assert call(capsys, *args, "--require", "p4")[0] == 1
    code, out, _ = call(capsys, *args, "--json")
    doc = json.loads(out)
    assert doc["properties"]["p1"] == doc["properties"]["p3"] is True


def test_equiv_search(capsys):
    code, out, _ = call(capsys, "equiv", "search", "--group", "S4", "--require", "p3", "--forbid", "p4", "--json")
    pairs = json.loads(out)["pairs"]
    assert code == 0 and any(p["orderH"] == 12 and p["orderH2"] == 6 for p in pairs)
    code, out, _ = call(capsys, "equiv", "search", "--group", "S4", "--require", "p4", "--forbid", "p2", "--json")
    assert any(p["orderH"] == 6 and p["orderH2"] == 2 and p["generatorsH2"] == ["(1 3)(2 4)"]
               for p in json.loads(out)["pairs"])
    assert call(capsys, "equiv", "search", "--group", "C2", "--forbid", "p2")[0] == 1


def test_tables_s3_json(capsys):
    code, out, _ = call(capsys, "tables", "s3", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == 1 and len(doc["tables"]) == 3
    for t in doc["tables"]:
        assert EvidenceTable.from_dict(t).as_dict() == t


def test_artin_local(capsys):
    code, out, _ = call(capsys, "artin", "local", "--group", "G128", "--h", "b^-2, a c^2, a d^-1 c^-1",
                        "--elt", "a^2 b^3 c^3 d")
    assert code == 0 and out.strip() == "(1-T)^4(1-T^2)^6"
    code, out, _ = call(capsys, "artin", "local", "--group", "S4", "--chi", str(DATA / "chi_c4.chi"),
                        "--elt", "(1 2 3 4)")
    assert out.strip() == "(1-z4*T)(1-z4^3*T)(1-T^4)"


def test_artin_character_table(capsys):
    code, out, _ = call(capsys, "artin", "character-table", "--group", "S4", "--json")
    assert code == 0 and sorted(int(r[0]) for r in json.loads(out)["characters"]) == [1, 1, 2, 3, 3]


def test_artin_subrep_exit_codes(capsys):
    assert call(capsys, "artin", "subrep", "--group", "S4", "--h", A4, "--h2", S3)[0] == 1
    assert call(capsys, "artin", "subrep", "--group", "S4", "--h", S3, "--h2", "(1 2)(3 4)")[0] == 0


def test_zeta(capsys):
    code, out, _ = call(capsys, "zeta", "local", "--poly", "x^3-2", "--p", "5")
    assert code == 0 and out.strip() == "(1-T)(1-T^2)"
    code, out, _ = call(capsys, "zeta", "divides", "--poly1", "x^2-2", "--poly2", "x^2+1", "--pmax", "100", "--json")
    assert code == 1 and json.loads(out)["witness"] == 5
    code, out, _ = call(capsys, "zeta", "divides", "--poly1", "x^2+1", "--poly2", "x^4+1", "--pmax", "1000", "--json")
    assert code == 0 and json.loads(out)["excluded"] == [2]


@pytest.mark.parametrize("argv", [
    ["verify", "iota"],
    ["verify", "kernel5", "--l", "5"],
    ["verify", "counterexample", "--l", "5"],
    ["verify", "gamma", "--n", "2", "--l", "3"],
    ["verify", "theorem", "--n", "2", "--l", "3", "--base", "C2"],
    ["verify", "gassmann"],
])
def test_verify_verbs(capsys, argv):
    code, out, _ = call(capsys, *argv, "--json")
    assert code == 0
    doc = json.loads(out)
    assert EvidenceTable.from_dict(doc).ok


def test_error_exit_codes(capsys):
    code, _, err = call(capsys, "group", "classes", "--group", "S9", "--cap", "closure=100")
    assert code == 3 and err.startswith("error: cap-exceeded:")
    assert call(capsys, "group", "classes", "--group", "nope")[0] == 2
    assert call(capsys, "group", "classes", "--group", "S4", "--bogus")[0] == 2
    code, _, err = call(capsys, "zeta", "local", "--poly", "x^2-1", "--p", "5")
    assert code == 2 and len(err.strip().splitlines()) == 1
    assert call(capsys, "artin", "local", "--group", "S4", "--elt", "a b")[0] == 2
