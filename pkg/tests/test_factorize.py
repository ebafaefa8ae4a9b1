from __future__ import annotations

import numpy as np
import pytest

from factorforge.catalog import (build_holomorph_diagonal, build_natural, conjugation_automorphisms,
                                 load_group)
from factorforge.chain import build_chain
from factorforge.factorize import (BudgetExhausted, FactorizationError, canonical_coset_rep,
                                   coset_orbit, descent_check, subgroup_chain,
                                   verify_factorization)
from factorforge.perm import Permutation, parse_cycles

from oracles import closure, right_cosets


def cyc(text, d):
    return parse_cycles(text, d)


def point_stabilizer(g, point):
    ch = build_chain(g.generators, g.degree, base_prefix=(point,))
    return ch.stabilizer(1).generators


def test_canonical_rep_matches_brute_force_cosets():
    s4 = build_natural(4, "symmetric")
    k = subgroup_chain(s4.chain, [cyc("(1,2)", 4)])
    elems = closure([g.images for g in s4.generators], 4)
    cosets = right_cosets(closure([cyc("(1,2)", 4).images], 4), elems)
    assert len(cosets) == 12
    reps = {}
    for x in elems:
        r = canonical_coset_rep(k, Permutation(x)).images.tobytes()
        reps.setdefault(r, set()).add(tuple(int(v) for v in x))
    assert sorted(map(frozenset, reps.values()), key=sorted) == sorted(cosets, key=sorted)


def test_canonical_rep_is_in_coset():
    a6 = build_natural(6)
    k = subgroup_chain(a6.chain, point_stabilizer(a6, 5))
    rng = np.random.default_rng(4)
    for _ in range(30):
        x = Permutation(a6.chain.random_array(rng))
        r = canonical_coset_rep(k, x)
        assert k.contains(r * ~x)


def test_orbit_trivial_when_h_is_g():
    a5 = build_natural(5)
    orb = coset_orbit(a5.generators, a5.chain, 1)
    assert len(orb) == 1


def test_orbit_psl2_11():
    g = load_group("PSL2_11")
    k = subgroup_chain(g.chain, point_stabilizer(g, 11))
    assert g.order // k.order == 12
    a5 = load_group("PSL2_11__A5")
    orb = coset_orbit(a5.generators, k, 12, reference_base=g.chain.base)
    assert len(orb) == 12


def test_orbit_s4():
    s4 = build_natural(4, "symmetric")
    k = subgroup_chain(s4.chain, point_stabilizer(s4, 0))
    orb = coset_orbit([cyc("(1,2,3)", 4)], k, 4, reference_base=s4.chain.base)
    assert len(orb) == 3
    k4 = subgroup_chain(s4.chain, point_stabilizer(s4, 3))
    assert len(coset_orbit([cyc("(1,2,3)", 4)], k4, 4, reference_base=s4.chain.base)) == 1


def test_orbit_budget():
    a6 = build_natural(6)
    k = subgroup_chain(a6.chain, [])
    with pytest.raises(BudgetExhausted):
        coset_orbit(a6.generators, k, 10)
    with pytest.raises(ValueError):
        coset_orbit(a6.generators, k, 0)


def test_a6_row1():
    g = load_group("A6")
    v = verify_factorization(g, load_group("A6__PSL2_5").generators,
                             load_group("A6__A4").generators)
    assert v.holds and v.intersection_order == 2 and v.cross_check_passed
    assert v.index == 30 and v.orbit_size == 30


def test_m12_row4():
    g = load_group("M12")
    v = verify_factorization(g, load_group("M12__A5").generators,
                             load_group("M12__M11").generators)
    assert v.holds and v.intersection_order == 5 and not v.exact


def test_omega8_a9_s8():
    g = load_group("O8p_2")
    v = verify_factorization(g, load_group("O8p_2__A9").generators,
                             load_group("O8p_2__S8").generators)
    assert v.holds and v.intersection_order == 42


def test_non_factorization():
    a6 = build_natural(6)
    a5 = point_stabilizer(a6, 5)
    a4_inside = [cyc("(1,2,3)", 6), cyc("(1,2)(3,4)", 6)]
    v = verify_factorization(a6, a5, a4_inside)
    assert not v.holds and v.cross_check_passed
    assert v.orbit_size * v.intersection_order == v.h_order


def test_exact_factorization():
    # S4 = S3 * C4 with trivial intersection
    s4 = build_natural(4, "symmetric")
    v = verify_factorization(s4, [cyc("(1,2)", 4), cyc("(1,2,3)", 4)], [cyc("(1,2,3,4)", 4)])
    assert v.holds and v.exact


def test_outside_generator_rejected():
    a5 = build_natural(5)
    with pytest.raises(FactorizationError):
        verify_factorization(a5, [cyc("(1,2)", 5)], a5.generators)


def test_k_chain_base_checked():
    a5 = build_natural(5)
    k = build_chain([cyc("(1,2,3)", 5)], 5, base_prefix=(4,))
    with pytest.raises(FactorizationError):
        verify_factorization(a5, a5.generators, None, k_chain=k)


def test_descent_branch_one():
    # S4 = A4 * D8 with N = A4, so H lies inside N
    s4 = build_natural(4, "symmetric")
    d8 = [cyc("(1,2,3,4)", 4), cyc("(1,3)", 4)]
    a4 = [cyc("(1,2,3)", 4), cyc("(2,3,4)", 4)]
    r = descent_check(s4, a4, d8, a4)
    assert r.branch == 1 and r.h_in_n
    assert r.k_cap_n_order == 4 and r.sub_verdict.holds


def test_descent_n_is_g():
    s4 = build_natural(4, "symmetric")
    r = descent_check(s4, [cyc("(1,2,3)", 4), cyc("(1,2)", 4)], [cyc("(1,2,3,4)", 4)],
                      s4.generators)
    assert r.branch == 1 and r.quotient_order == 1


def test_descent_branch_two():
    a5 = build_natural(5)
    d = build_holomorph_diagonal(a5, conjugation_automorphisms(a5, [cyc("(1,2)", 5)]))
    left = d.subgroups["left"].generators
    right = d.subgroups["right"].generators
    outer = d.generators[len(left) + len(right)]
    # N = the socle A5 x A5, H = right translations with an outer automorphism,
    # K = stabilizer of the identity
    k = point_stabilizer(d, 0)
    r = descent_check(d, right + [outer], k, left + right)
    assert r.branch == 2 and not r.h_in_n
    assert r.n_order == 3600 and r.h_cap_n_order == 60 and r.h_image_order == 2
    r1 = descent_check(d, right, k, left + right)
    assert r1.branch == 1


def test_descent_requires_normal():
    s4 = build_natural(4, "symmetric")
    with pytest.raises(FactorizationError):
        descent_check(s4, s4.generators, [], [cyc("(1,2)", 4)])


def test_descent_three_cycle_and_d8():
    s4 = build_natural(4, "symmetric")
    d8 = [cyc("(1,2)", 4), cyc("(3,4)", 4), cyc("(1,3)(2,4)", 4)]
    a4 = [cyc("(1,2,3)", 4), cyc("(2,3,4)", 4)]
    r = descent_check(s4, [cyc("(1,2,3)", 4)], d8, a4)
    assert r.branch == 1 and r.h_in_n and r.sub_verdict.holds
    assert r.k_cap_n_order == 4 and r.sub_verdict.intersection_order == 1
