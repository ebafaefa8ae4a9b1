from __future__ import annotations

import json
import subprocess
import sys

import pytest

from factorforge.catalog import case_path, data_dir, load_group_record
from factorforge.cli import main, parse_rows


def write_case(tmp_path, **overrides):
    case = {"row": None, "L": "A6", "H": "A6__PSL2_5", "K": "A6__A4", "expect_holds": True,
            "expected_intersection_order": "2"}
    case.update(overrides)
    p = tmp_path / "case.json"
    p.write_text(json.dumps(case))
    return p


def test_parse_rows():
    assert parse_rows("1,4,5-8") == [1, 4, 5, 6, 7, 8]
    assert parse_rows("") == []
    assert parse_rows("3,3,2-3") == [3, 2]
    for bad in ("0", "29", "5-2", "x", "1-"):
        with pytest.raises(ValueError):
            parse_rows(bad)


def test_verify_row4(capsys):
    assert main(["verify", str(case_path(4))]) == 0
    assert capsys.readouterr().out.startswith("PASS")


def test_verify_mismatch(tmp_path, capsys):
    p = write_case(tmp_path, expected_intersection_order="3")
    assert main(["verify", str(p)]) == 1
    p = write_case(tmp_path, expect_holds=False)
    assert main(["verify", str(p)]) == 1
    capsys.readouterr()


def test_verify_missing_asset(tmp_path, capsys):
    p = write_case(tmp_path, K="A6__nothing")
    assert main(["verify", str(p)]) == 2
    assert main(["verify", str(tmp_path / "absent.json")]) == 2
    capsys.readouterr()


def test_verify_budget_cap(capsys):
    assert main(["verify", str(case_path(4)), "--budget-cap", "0.5"]) == 3
    assert "INDETERMINATE" in capsys.readouterr().out.upper()


def test_verify_relative_record(tmp_path, capsys):
    rec = json.loads((data_dir() / "groups" / "A6__A4.json").read_text())
    (tmp_path / "k.json").write_text(json.dumps(rec))
    p = write_case(tmp_path, K="k.json")
    assert main(["verify", str(p)]) == 0
    capsys.readouterr()


def test_table1_selection(capsys):
    assert main(["table1", "--rows", "1,4,5-8", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["rows"] == [1, 4, 5, 6, 7, 8]
    assert all(c["status"] == "pass" for c in doc["cases"])
    # rows 1, 5 and 7 list two K each
    assert len(doc["cases"]) == 9


def test_table1_empty(capsys):
    assert main(["table1", "--rows", "", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["cases"] == [] and doc["totals"]["pass"] == 0


def test_table1_bad_rows(capsys):
    assert main(["table1", "--rows", "30"]) == 2
    capsys.readouterr()


def test_table1_markdown_matches_json(tmp_path, capsys):
    md, js = tmp_path / "t.md", tmp_path / "t.json"
    assert main(["table1", "--rows", "1,5", "--out", str(md)]) == 0
    assert main(["table1", "--rows", "1,5", "--format", "json", "--out", str(js)]) == 0
    capsys.readouterr()
    doc = json.loads(js.read_text())
    lines = [ln for ln in md.read_text().splitlines() if ln.startswith("| ") and "---" not in ln]
    body = lines[1:]
    assert len(body) == len(doc["cases"])
    for line, case in zip(body, doc["cases"]):
        cells = [c.strip() for c in line.strip("|").split("|")]
        assert cells[0] == str(case["row"])
        assert cells[-2] == case["status"]


def test_table1_row25_contents(capsys):
    # rows 25 cases include the endpoints and the S8 case
    assert main(["table1", "--rows", "25", "--format", "json", "--threads", "1"]) == 0
    doc = json.loads(capsys.readouterr().out)
    ks = {c["K"] for c in doc["cases"]}
    assert {"O8p_2__S8", "O8p_2__2^4_A5", "O8p_2__2^6_A8"} <= ks
    s8 = next(c for c in doc["cases"] if c["K"] == "O8p_2__S8")
    assert s8["intersection_order"] == "42"


def test_search_emits_record(tmp_path, capsys):
    out = tmp_path / "h.json"
    code = main(["search", "--group", "A6", "--k", "stab:6", "-n", "5", "--seed", "1",
                 "--out", str(out)])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["found"] and doc["record"]["claims"] == {"alternating": 5}
    h = load_group_record(out)
    assert h.order == 60
    case = write_case(tmp_path, H="h.json", K="A6__A5", expected_intersection_order="10")
    assert main(["verify", str(case)]) == 0
    capsys.readouterr()


def test_search_exhausted(capsys):
    assert main(["search", "--group", "A6", "--k", "stab:6", "-n", "7"]) == 4
    doc = json.loads(capsys.readouterr().out)
    assert not doc["found"]


def test_search_bad_input(capsys):
    assert main(["search", "--group", "A6", "--k", "stab:9", "-n", "5"]) == 2
    assert main(["search", "--group", "A6", "--k", "stab:1", "-n", "5", "--orders", "3"]) == 2
    capsys.readouterr()


def test_search_case_file():
    p = data_dir() / "cases" / "search_a6.json"
    r = subprocess.run([sys.executable, "-m", "factorforge", "verify", str(p), "--format", "json"],
                       capture_output=True, text=True)
    assert r.returncode == 0, r.stderr
    doc = json.loads(r.stdout[r.stdout.index("{"):])
    assert doc["cases"][0]["intersection_order"] == "10"
