"""Acceptance criteria 1-8, each recorded for the one-line-per-criterion summary."""
from __future__ import annotations

import time

import numpy as np
import pytest

from factorforge.catalog import (build_holomorph_diagonal, build_natural,
                                 build_product_action_wreath, build_psl2, case_path,
                                 conjugation_automorphisms, load_cases, load_group)
from factorforge.chain import build_chain, minimal_blocks, ordered_tuple_orbits, transitivity_degree
from factorforge.factorize import verify_factorization
from factorforge.perm import Permutation, parse_cycles
from factorforge.recognize import (exhaustive_alternating_search, is_regular, is_simple_mc,
                                   order_spectrum, recognize_alternating, search_factor_subgroup)
from factorforge.report import PASS, run_cases

from conftest import CRITERIA
from oracles import (closure, intersection_size, ordered_pair_orbit_count,
                     product_set_size, s6_outer_automorphism)

# every verdict produced while checking criteria 1-6; criterion 7 audits them
CROSS_CHECKS: list[bool] = []


def record(k: int, ok: bool, detail: str) -> None:
    CRITERIA.setdefault(k, []).append((bool(ok), detail))


def stab_gens(g, point):
    return build_chain(g.generators, g.degree, base_prefix=(point,)).stabilizer(1).generators


# ----- criterion 1 ----------------------------------------------------------

@pytest.fixture(scope="module")
def table_results():
    out = {}
    for name, rows in (("1-13", range(1, 14)), ("14-28", range(14, 29))):
        cases = [c for r in rows for c in load_cases(case_path(r))]
        t0 = time.perf_counter()
        results = run_cases(cases, threads=1)
        out[name] = (results, time.perf_counter() - t0)
    return out


@pytest.mark.parametrize("block,limit", [("1-13", 60.0), ("14-28", 1800.0)])
def test_c1_table_rows(table_results, block, limit):
    results, elapsed = table_results[block]
    CROSS_CHECKS.extend(bool(r.cross_check) for r in results)
    bad = [f"row {r.row} K={r.K}: {r.status} {r.message}" for r in results if r.status != PASS]
    unrecognized = [r.row for r in results if r.recognition != "accepted"]
    rows = sorted({r.row for r in results})
    ok = not bad and not unrecognized and elapsed < limit
    record(1, ok, f"rows {block}: {len(results)} cases over {len(rows)} rows, "
                  f"{len(bad)} failing, {elapsed:.1f}s (limit {limit:.0f}s)")
    assert not bad, bad
    assert not unrecognized
    assert elapsed < limit


def test_c1_all_rows_present():
    rows = {c.row for r in range(1, 29) for c in load_cases(case_path(r))}
    record(1, rows == set(range(1, 29)), f"{len(rows)} rows shipped")
    assert rows == set(range(1, 29))


def test_c1_omega8_a9_s8_regression():
    g = load_group("O8p_2")
    h = load_group("O8p_2__A9")
    assert recognize_alternating(h.chain, 9).accepted
    v = verify_factorization(g, h.generators, load_group("O8p_2__S8").generators)
    CROSS_CHECKS.append(v.cross_check_passed)
    record(1, v.holds, f"Omega8+(2) = A9 * S8 holds={v.holds} |H∩K|={v.intersection_order}")
    assert v.holds and v.intersection_order == 42


# ----- criterion 2 ----------------------------------------------------------

def _row_case(row, k):
    return next(c for c in load_cases(case_path(row)) if c.K == k)


def _brute(case):
    g = load_group(case.L)
    h = closure([x.images for x in load_group(case.H).generators], g.degree)
    k = closure([x.images for x in load_group(case.K).generators], g.degree)
    return g.order, product_set_size(h, k), intersection_size(h, k)


@pytest.mark.parametrize("row,k,expected", [(1, "A6__A4", 2), (4, "M12__M11", 5),
                                            (5, "PSL2_11__11", 1), (5, "PSL2_11__11_5", 5)])
def test_c2_intersections_with_brute_force(row, k, expected):
    case = _row_case(row, k)
    g = load_group(case.L)
    v = verify_factorization(g, load_group(case.H).generators, load_group(k).generators)
    CROSS_CHECKS.append(v.cross_check_passed)
    order, prod, inter = _brute(case)
    identity = v.intersection_order * g.order == v.h_order * v.k_order
    ok = (v.holds and prod == order and inter == v.intersection_order == expected and identity
          and v.exact == (expected == 1))
    record(2, ok, f"row {row} K={k}: |H∩K|={v.intersection_order}, brute force {inter}, "
                  f"|HK|={prod}/{order}")
    assert ok


@pytest.mark.xfail(strict=True, reason="|A5 ∩ 11:5| is 5 in PSL2(11); the trivial "
                                       "intersection belongs to K = 11")
def test_c2_row5_k_11_5_literal_claim():
    case = _row_case(5, "PSL2_11__11_5")
    v = verify_factorization(load_group(case.L), load_group(case.H).generators,
                             load_group(case.K).generators)
    _, _, inter = _brute(case)
    ok = v.intersection_order == 1 and v.exact
    record(2, ok, f"literal claim row 5 K=11:5 |H∩K|=1: computed {v.intersection_order}, "
                  f"brute force {inter}")
    assert ok


# ----- criterion 3 ----------------------------------------------------------

@pytest.mark.parametrize("k_name", ["A6__A4", "A6__S4"])
def test_c3_row1_k_transitive_after_outer_automorphism(k_name):
    phi = s6_outer_automorphism()
    a6 = load_group("A6")
    k_img = [Permutation(phi(x.images)) for x in load_group(k_name).generators]
    h_img = [Permutation(phi(x.images)) for x in load_group("A6__PSL2_5").generators]
    kc = build_chain(k_img, 6)
    hc = build_chain(h_img, 6)
    fixed = [p for p in range(6) if all(h(p) == p for h in h_img)]
    deg = transitivity_degree(kc)
    v = verify_factorization(a6, h_img, k_img)
    CROSS_CHECKS.append(v.cross_check_passed)
    ok = deg == 1 and hc.order == 60 and len(fixed) == 1 and v.holds
    record(3, ok, f"{k_name} image: order {kc.order}, transitivity degree {deg}, "
                  f"A6 = A5_point * K holds={v.holds}")
    assert ok


def test_c3_row2_psl2_9_two_transitive():
    h = load_group("A10__PSL2_9")
    n_oracle = ordered_pair_orbit_count([g.images for g in h.generators], 10)
    n_chain = ordered_tuple_orbits(h.generators, 10, 2)
    ok = n_oracle == n_chain == 1 and transitivity_degree(h.chain) >= 2
    record(3, ok, f"PSL2(9) on 10 points: {n_chain} orbit on ordered pairs")
    assert ok


# ----- criterion 4 ----------------------------------------------------------

def test_c4_holomorph_diagonal():
    a5 = build_natural(5)
    d = build_holomorph_diagonal(a5, conjugation_automorphisms(a5, [parse_cycles("(1,2)", 5)]))
    prim = minimal_blocks(d.chain).primitive
    reg = is_regular(d.subgroups["right"].chain)
    ok = d.degree == 60 and prim and reg
    record(4, ok, f"D(2,A5) degree {d.degree} primitive={prim}, right A5 regular={reg}")
    assert ok


def test_c4_product_action_search():
    w = build_product_action_wreath(build_natural(6, "symmetric"))
    prim = minimal_blocks(w.chain).primitive
    r = search_factor_subgroup(w, stab_gens(w, 0), 6, 2000, 0, orders=(3, 4))
    ok = prim and r.found
    if r.found:
        h = build_chain(r.h_gens, 36)
        CROSS_CHECKS.append(r.verdict.cross_check_passed)
        ok = ok and h.order == 360 and transitivity_degree(h) >= 1 and is_simple_mc(h).passed
    record(4, ok, f"S6 wr S2 on 36 points primitive={prim}, A6 found at attempt {r.attempt} "
                  f"of 2000 (seed 0)")
    assert ok


# ----- criterion 5 ----------------------------------------------------------

PRIMES = [p for p in range(2, 62) if all(p % d for d in range(2, p))]


def agl1(p):
    z = next(z for z in range(1, p) if len({pow(z, e, p) for e in range(p - 1)}) == p - 1) \
        if p > 2 else 1
    gens = [Permutation([(x + 1) % p for x in range(p)]),
            Permutation([(z * x) % p for x in range(p)])]
    return build_chain(gens, p), p * (p - 1)


def agl2(q):
    pts = [(a, b) for a in range(q) for b in range(q)]
    idx = {v: i for i, v in enumerate(pts)}
    mats = [((1, 1), (0, 1)), ((1, 0), (1, 1)), ((q - 1, 0), (0, 1))]
    gens = [Permutation([idx[((a + 1) % q, b)] for a, b in pts])]
    for m in mats:
        gens.append(Permutation([idx[((a * m[0][0] + b * m[1][0]) % q,
                                      (a * m[0][1] + b * m[1][1]) % q)] for a, b in pts]))
    order = q * q * (q * q - 1) * (q * q - q)
    return build_chain(gens, q * q), order


def test_c5_affine_groups_have_no_alternating_subgroups():
    groups = [(f"AGL1({p})", *agl1(p)) for p in PRIMES] + [("AGL2(2)", *agl2(2)),
                                                           ("AGL2(3)", *agl2(3))]
    bad, candidates = [], 0
    for name, ch, order in groups:
        assert ch.order == order, name
        rep = exhaustive_alternating_search(ch)
        candidates += bool(rep.candidates_n)
        if not rep.none_found or rep.a5_found:
            bad.append(name)
    record(5, not bad, f"{len(groups)} affine groups, {candidates} with a Lagrange candidate, "
                       f"none contain A5" if not bad else f"alternating subgroup in {bad}")
    assert not bad


# ----- criteria 6 and 7: the fixture corpus ---------------------------------

def _cyclic(n):
    return build_chain([Permutation(np.roll(np.arange(n), 1))], n)


def _dihedral(n):
    return build_chain([Permutation(np.roll(np.arange(n), 1)),
                        Permutation((-np.arange(n)) % n)], n)


def corpus():
    out = {f"C{n}": _cyclic(n) for n in (6, 12, 30)}
    out.update({f"D{n}": _dihedral(n) for n in (8, 10, 12)})
    out.update({"S4": build_natural(4, "symmetric").chain, "S5": build_natural(5, "symmetric").chain,
                "A5": build_natural(5).chain, "A6": build_natural(6).chain,
                "PSL2(7)": build_psl2(7).chain, "PSL2(11)": build_psl2(11).chain})
    return out


def subgroup_pool(ch, rng):
    d = ch.degree
    pool = []
    for _ in range(4):
        pool.append([Permutation(ch.random_array(rng))])
    for _ in range(3):
        pool.append([Permutation(ch.random_array(rng)) for _ in range(2)])
    for p in rng.choice(d, size=2, replace=False):
        c = build_chain(ch.generator_arrays(), d, base_prefix=(int(p),))
        pool.append(c.stabilizer(1).generators or [c.identity()])
        if len(c.levels) > 1:
            pool.append(c.stabilizer(2).generators or [c.identity()])
    return pool


@pytest.fixture(scope="module")
def corpus_pairs():
    rng = np.random.default_rng(2024)
    out = []
    for name, ch in corpus().items():
        pool = subgroup_pool(ch, rng)
        elems = [closure([x.images for x in s], ch.degree) for s in pool]
        for _ in range(25):
            i, j = (int(x) for x in rng.integers(len(pool), size=2))
            out.append((name, ch, pool[i], pool[j], elems[i], elems[j]))
    return out


def test_c6_oracle_equivalence(corpus_pairs):
    agree, negatives = 0, 0
    mismatches = []
    for name, ch, h, k, he, ke in corpus_pairs:
        v = verify_factorization(ch, h, k)
        CROSS_CHECKS.append(v.cross_check_passed)
        brute = product_set_size(he, ke) == ch.order
        inter = intersection_size(he, ke)
        if v.holds == brute and v.intersection_order == inter:
            agree += 1
        else:
            mismatches.append(name)
        negatives += not brute
    ok = not mismatches and agree >= 200 and negatives >= 40
    record(6, ok, f"{agree}/{len(corpus_pairs)} pairs agree with brute force, "
                  f"{negatives} negative, {len(corpus_pairs) - negatives} positive")
    assert ok, mismatches


def test_c7_chain_order_matches_closure():
    groups = dict(corpus())
    groups.update({"S6": build_natural(6, "symmetric").chain, "A7": build_natural(7).chain,
                   "PSL2(13)": build_psl2(13).chain, "PSL2(5)": build_psl2(5).chain})
    bad = [n for n, ch in groups.items()
           if ch.order > 5000 or ch.order != len(closure(ch.generator_arrays(), ch.degree))]
    record(7, not bad, f"BSGS order equals closure order on {len(groups)} groups")
    assert not bad


def test_c7_conjugation_invariance():
    rng = np.random.default_rng(7)
    trials, bad = 0, []
    for name, ch in corpus().items():
        pool = subgroup_pool(ch, rng)
        for _ in range(50):
            i, j = (int(x) for x in rng.integers(len(pool), size=2))
            x = Permutation(ch.random_array(rng))
            xi = ~x
            a = verify_factorization(ch, pool[i], pool[j])
            b = verify_factorization(ch, [xi * y * x for y in pool[i]],
                                     [xi * y * x for y in pool[j]])
            trials += 1
            if (a.holds, a.intersection_order) != (b.holds, b.intersection_order):
                bad.append(name)
    record(7, not bad, f"conjugation invariance on {trials} conjugate pairs")
    assert not bad


def test_c7_symmetry(corpus_pairs):
    bad = []
    for name, ch, h, k, _, _ in corpus_pairs:
        a = verify_factorization(ch, h, k)
        b = verify_factorization(ch, k, h)
        if (a.holds, a.intersection_order) != (b.holds, b.intersection_order):
            bad.append(name)
    record(7, not bad, f"G = HK iff G = KH on {len(corpus_pairs)} pairs")
    assert not bad


def test_c7_cross_check_audit():
    # runs after criteria 1-6 in file order
    ok = bool(CROSS_CHECKS) and all(CROSS_CHECKS)
    record(7, ok, f"cross-check agreed on {sum(CROSS_CHECKS)}/{len(CROSS_CHECKS)} verdicts")
    assert ok


# ----- criterion 8 ----------------------------------------------------------

@pytest.mark.parametrize("name,expect", [("PSL3_4", False), ("A8", True)])
def test_c8_spectrum_gate(name, expect):
    ch = load_group("PSL3_4").chain if name == "PSL3_4" else build_natural(8).chain
    t0 = time.perf_counter()
    spec = order_spectrum(ch, "exhaustive")
    elapsed = time.perf_counter() - t0
    v = recognize_alternating(ch, 8)
    ok = (15 in spec) == expect and v.accepted == expect and elapsed < 60
    record(8, ok, f"{name}: order {ch.order}, 15 in spectrum={15 in spec}, "
                  f"{'accepted' if v.accepted else 'rejected'}, scan {elapsed:.1f}s")
    assert ok
