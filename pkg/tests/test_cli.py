import json

import pytest

from qmersenne.cli import main
from qmersenne.tables import load_fixtures, verify_tables


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def json_lines(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def test_info_d2(capsys):
    code, out, _ = run(capsys, "info", "--d", "2")
    assert code == 0
    assert "1+√2" in out and "2+√2" in out and "irreducible" in out


def test_info_d29_json(capsys):
    code, out, _ = run(capsys, "info", "--d", "29", "--json")
    (rec,) = json_lines(out)
    assert code == 0
    assert rec["unit"] == "(5+√29)/2" and rec["alpha_norm"] == "5" and rec["verdict"] == "irreducible"
    assert rec["ring"] == "Z[(1+√29)/2]" and rec["class_number_one"] is True


def test_info_not_squarefree(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["info", "--d", "12"])
    assert exc.value.code == 2
    assert "square-free" in capsys.readouterr().err


def test_info_warns_outside_table(capsys):
    code, _, err = run(capsys, "info", "--d", "79")
    assert code == 0 and "class number 1" in err


def test_unit(capsys):
    code, out, _ = run(capsys, "unit", "--d", "93", "--json")
    (rec,) = json_lines(out)
    assert rec == {"d": 93, "unit": "(29+3√93)/2", "norm": 1, "preperiod": [5], "period": [3, 9]}


def _hits(out):
    return [r for r in json_lines(out) if r.get("summary")][0]["probable_prime_exponents"]


@pytest.mark.parametrize("d,pmax,expected", [
    ("2", "11", [2, 3, 5, 7, 11]),
    ("21", "17", [17]),
    ("13", "41", [5, 7, 11, 19, 41]),
])
def test_search(capsys, d, pmax, expected):
    code, out, _ = run(capsys, "search", "--d", d, "--p-max", pmax, "--json")
    assert code == 0
    assert _hits(out) == expected


def test_search_records(capsys):
    code, out, _ = run(capsys, "search", "--d", "2", "--p-max", "11", "--json", "--elements")
    recs = [r for r in json_lines(out) if not r.get("summary")]
    assert [r["p"] for r in recs] == [2, 3, 5, 7, 11]
    assert recs[-1]["norm"] == "732799" and recs[-1]["M"] == "152193+107615√2"
    assert recs[-1]["h"] == "5725" and recs[-1]["n"] == 7


def test_search_text_output(capsys):
    code, out, _ = run(capsys, "search", "--d", "77", "--p-max", "8")
    assert code == 0
    assert "probable-prime norms at p = 2, 7" in out
    assert "10248701" in out


def test_search_sqrt2(capsys):
    code, out, _ = run(capsys, "search", "--d", "2", "--alpha", "√2", "--p-max", "31", "--json")
    assert code == 0
    assert _hits(out) == [3, 5, 7, 13, 17, 19, 31]


def test_search_alpha_power(capsys):
    code, out, _ = run(capsys, "search", "--d", "5", "--alpha-power", "2", "--p-max", "10", "--json")
    assert code == 0
    assert json_lines(out)[-1]["alpha"] == "(5+√5)/2"


def test_search_reducible_exit_3(capsys):
    code, _, err = run(capsys, "search", "--d", "3", "--p-max", "20")
    assert code == 3
    assert "T3" in err and "reducible" in err
    code, _, err = run(capsys, "search", "--d", "5", "--p-max", "20")
    assert code == 3 and "unit" in err


def test_search_bad_pmax(capsys):
    code, _, _ = run(capsys, "search", "--d", "2", "--p-max", "1")
    assert code == 2


def test_search_bad_alpha(capsys):
    code, _, err = run(capsys, "search", "--d", "2", "--alpha", "3+√2", "--p-max", "5")
    assert code == 3 and "not a unit" in err


def test_threads_do_not_change_output(capsys, tmp_path):
    m1, m2 = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "search", "--d", "2", "--p-max", "90", "--json", "--manifest", str(m1))
    run(capsys, "search", "--d", "2", "--p-max", "90", "--json", "--threads", "3",
        "--manifest", str(m2))
    a, b = json.loads(m1.read_text()), json.loads(m2.read_text())
    assert a["digest"] == b["digest"]
    assert a["command"] == "search" and a["seed"] == 0 and a["version"]


def test_manifest_digest_stable(capsys, tmp_path):
    digests = []
    for i in range(2):
        path = tmp_path / f"m{i}.json"
        run(capsys, "represent", "431", "5279", "--json", "--manifest", str(path))
        digests.append(json.loads(path.read_text())["digest"])
    assert digests[0] == digests[1]


def test_represent(capsys):
    code, out, _ = run(capsys, "represent", "431", "--json")
    (rec,) = json_lines(out)
    assert code == 0
    assert (rec["x"], rec["y"]) == ("16", "5") and rec["structure"]["all_pass"] is True


def test_represent_p89(capsys):
    n89 = "290315886781191681464330388772329064268797313023"
    code, out, _ = run(capsys, "represent", n89, "--json")
    (rec,) = json_lines(out)
    assert (rec["x"], rec["y"]) == ("363706809248848497658560", "150253711001099458172317")


def test_represent_not_representable(capsys):
    code, out, _ = run(capsys, "represent", "3")
    assert code == 3 and "3 mod 28" in out


def test_represent_from_search(capsys, tmp_path):
    code, out, _ = run(capsys, "search", "--d", "2", "--p-max", "11", "--json")
    path = tmp_path / "search.jsonl"
    path.write_text(out)
    code, out, _ = run(capsys, "represent", "--from-search", str(path), "--json")
    recs = json_lines(out)
    # 7 = 0^2 + 7*1^2 and 31 is not representable, so exit code flags the latter
    assert [r["N"] for r in recs] == ["7", "31", "431", "5279", "732799"]
    assert code == 3
    assert [(r["x"], r["y"]) for r in recs[2:]] == [("16", "5"), ("64", "13"), ("856", "3")]


def test_verify_tables_all(capsys):
    code, out, _ = run(capsys, "verify-tables")
    assert code == 0
    assert "7/7 tables pass" in out


def test_verify_single_table(capsys):
    code, out, _ = run(capsys, "verify-tables", "--table", "2", "--json")
    (rec,) = json_lines(out)
    assert code == 0 and rec["table"] == 2 and rec["passed"]
    assert any("d=317" in n for n in rec["notes"])


def test_verify_tables_tampered(capsys, tmp_path, monkeypatch):
    fixtures = load_fixtures()
    fixtures["table1"]["rows"][2]["norm"] = "433"
    path = tmp_path / "tampered.json"
    path.write_text(json.dumps(fixtures, ensure_ascii=False), encoding="utf-8")
    monkeypatch.setenv("QM_FIXTURES", str(path))
    code, out, _ = run(capsys, "verify-tables", "--table", "1")
    assert code == 1
    assert "table1[p=5.norm]: expected 433, got 431" in out


def test_verify_tables_bad_fixture_path(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("QM_FIXTURES", str(tmp_path / "missing.json"))
    code, _, err = run(capsys, "verify-tables")
    assert code == 2


def test_tampered_unit_table():
    fixtures = load_fixtures()
    fixtures["table4"]["rows"][0]["u"] = "(7+√21)/2"
    (res,) = verify_tables([4], fixtures)
    assert not res.passed
    assert any("d=21.u" in m for m in res.mismatches)


def test_properties_command(capsys):
    code, out, _ = run(capsys, "properties", "--p-max", "61", "--json")
    checks = json_lines(out)
    assert code == 0
    assert all(c["passed"] for c in checks) and len(checks) == 11


def test_config_errors(capsys):
    code, _, _ = run(capsys, "search", "--d", "2", "--p-max", "5", "--trial-bound", "1")
    assert code == 2
