from __future__ import annotations

import json
import shutil

import numpy as np
import pytest

from factorforge.catalog import (AssetError, build_holomorph_diagonal, build_natural,
                                 build_product_action_wreath, build_psl2, case_path,
                                 conjugation_automorphisms, data_dir, load_cases, load_group,
                                 load_group_record)
from factorforge.chain import minimal_blocks, ordered_tuple_orbits, transitivity_degree
from factorforge.perm import parse_cycles
from factorforge.recognize import is_regular


def sp_order(n, q):
    out = q ** (n * n)
    for i in range(1, n + 1):
        out *= q ** (2 * i) - 1
    return out


def test_sp8_2_order():
    g = load_group("Sp8_2")
    assert g.degree == 255
    assert g.order == sp_order(4, 2) == 47377612800


def test_corrupted_order_rejected(tmp_path):
    d = json.loads((data_dir() / "groups" / "A6__A5.json").read_text())
    d["expected_order"] = "59"
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(d))
    with pytest.raises(AssetError, match="order gate"):
        load_group_record(p)
    d["expected_order"] = "61"
    p.write_text(json.dumps(d))
    with pytest.raises(AssetError, match="order gate"):
        load_group_record(p)


@pytest.mark.parametrize("patch", [{"kind": "nonsense"}, {"expected_order": 60},
                                   {"generators": ["(1,7)"]}, {"generators": 5}])
def test_malformed_records(tmp_path, patch):
    d = json.loads((data_dir() / "groups" / "A6__A5.json").read_text())
    d.update(patch)
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(d))
    with pytest.raises(AssetError):
        load_group_record(p)


def test_false_alternating_claim(tmp_path):
    d = json.loads((data_dir() / "groups" / "A6__A5.json").read_text())
    d["claims"] = {"alternating": 6}
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(d))
    with pytest.raises(AssetError, match="not recognized"):
        load_group_record(p)
    assert load_group_record(p, check_claims=False).order == 60


def test_missing_asset():
    with pytest.raises(AssetError):
        load_group("no_such_group")
    with pytest.raises(AssetError):
        load_group("../groups/A6")


def test_natural():
    assert build_natural(9).order == 181440
    s5 = build_natural(5, "symmetric")
    assert s5.order == 120 and s5.name == "S5"
    assert build_natural(1).order == 1
    assert build_natural(2).order == 1
    with pytest.raises(ValueError):
        build_natural(0)


@pytest.mark.parametrize("q", [5, 9, 11])
def test_psl2_two_transitive(q):
    g = build_psl2(q)
    assert g.degree == q + 1
    assert g.order == q * (q * q - 1) // 2
    assert ordered_tuple_orbits(g.generators, q + 1, 2) == 1


def test_psl2_unsupported():
    with pytest.raises(ValueError):
        build_psl2(8)


def test_holomorph_diagonal_a5():
    a5 = build_natural(5)
    aut = conjugation_automorphisms(a5, [parse_cycles("(1,2)", 5)])
    d = build_holomorph_diagonal(a5, aut)
    assert d.degree == 60
    # (A5 x A5).(2 x 2): translations, the outer class and the swap
    assert d.order == 60 * 60 * 4
    assert minimal_blocks(d.chain).primitive
    assert is_regular(d.subgroups["right"].chain)
    assert is_regular(d.subgroups["left"].chain)
    inversion = d.generators[-1]
    assert (inversion * inversion).is_identity()
    assert inversion(0) == 0  # the identity sorts first


def test_holomorph_bad_payload():
    a5 = build_natural(5)
    with pytest.raises(ValueError):
        build_holomorph_diagonal(a5, [[1, 0] + list(range(2, 60))])


def test_wreath_s6():
    w = build_product_action_wreath(build_natural(6, "symmetric"))
    assert w.degree == 36 and w.order == 1036800
    swap = w.generators[-1]
    assert sum(1 for i in range(36) if swap(i) == i) == 6
    assert minimal_blocks(w.chain).primitive
    assert transitivity_degree(w.chain) == 1


def test_wreath_cap():
    with pytest.raises(ValueError):
        build_product_action_wreath(build_natural(13))


def test_all_rows_have_cases():
    for row in range(1, 29):
        cases = load_cases(case_path(row))
        assert cases and all(c.row == row for c in cases)


def test_data_override(tmp_path, monkeypatch):
    (tmp_path / "groups").mkdir()
    shutil.copy(data_dir() / "groups" / "A6.json", tmp_path / "groups" / "A6.json")
    monkeypatch.setenv("FACTORFORGE_DATA", str(tmp_path))
    assert load_group("A6").order == 360
    with pytest.raises(AssetError):
        load_group("M12")


def test_bad_case_file(tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"L": "A6", "H": "A6__A5"}))
    with pytest.raises(AssetError):
        load_cases(p)
    p.write_text(json.dumps({"L": "A6", "H": {"search": {"seed": 1}}, "K": "A6__A5",
                             "expect_holds": True}))
    with pytest.raises(AssetError):
        load_cases(p)
    p.write_text("[1, 2]")
    with pytest.raises(AssetError):
        load_cases(p)


def test_claims_on_h_assets():
    h = load_group("O8p_2__A9")
    assert h.record.claims == {"alternating": 9}
    assert np.isscalar(h.order)
