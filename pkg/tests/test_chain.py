from __future__ import annotations

import numpy as np
import pytest
from scipy import stats

from factorforge.catalog import build_natural, build_psl2, load_group
from factorforge.chain import (ChainError, OrderLimitExceeded, build_chain, is_transitive,
                               minimal_blocks, orbit, ordered_tuple_orbits, transitivity_degree)
from factorforge.perm import Permutation, parse_cycles, product

from oracles import closure


def cyc(text, d):
    return parse_cycles(text, d)


def test_a5_order():
    ch = build_chain([cyc("(1,2,3,4,5)", 5), cyc("(1,2,3)", 5)])
    assert ch.order == 60


def test_empty_generators():
    assert build_chain([], 5).order == 1


def test_m11_order_matches_closure():
    m11 = load_group("M11")
    elems = closure([g.images for g in m11.generators], 12)
    assert len(elems) == 7920 == m11.order


def test_m12_order_matches_closure():
    m12 = load_group("M12")
    assert len(closure([g.images for g in m12.generators], 12)) == 95040 == m12.order


def test_natural_a9_order():
    assert build_natural(9).order == 181440


def test_sp6_2_order():
    assert load_group("Sp6_2").order == 2 ** 9 * (2 ** 2 - 1) * (2 ** 4 - 1) * (2 ** 6 - 1)


def test_membership():
    a5 = build_natural(5)
    for g in a5.chain.strong_generators:
        assert a5.chain.contains(g)
    assert not a5.chain.contains(cyc("(1,2)", 5))
    rng = np.random.default_rng(3)
    gens = a5.generators
    word = [gens[int(i)] for i in rng.integers(len(gens), size=20)]
    assert a5.chain.contains(product(word, 5))


def test_sift_residue():
    a5 = build_natural(5)
    ok, residue = a5.chain.sift(cyc("(1,2)", 5))
    assert not ok and not residue.is_identity()


def test_orbits():
    a5 = build_natural(5)
    assert len(orbit(a5.generators, 0)) == 5
    o = orbit([cyc("(1,2)(3,4)", 5)], 0)
    assert sorted(o.points) == [0, 1]
    psl = build_psl2(11)
    for p in (0, 7, 11):
        assert len(orbit(psl.generators, p)) == 12


def test_orbit_transversal():
    g = build_natural(7).generators
    o = orbit(g, 2)
    for p in o.points:
        assert o.transversal(p)(2) == p


def test_transitivity_degrees():
    for n in (5, 6, 7, 8):
        assert transitivity_degree(build_natural(n).chain) == n - 2
    assert transitivity_degree(load_group("M11").chain) == 3
    c6 = build_chain([cyc("(1,2,3,4,5,6)", 6)])
    assert transitivity_degree(c6) == 1


def test_m11_three_transitive_by_tuples():
    m11 = load_group("M11")
    assert ordered_tuple_orbits(m11.generators, 12, 3) == 1


def test_homogeneous_mode():
    # PSL2(8):3 style check on a small case: AGL1(8) is 2-transitive, the cyclic group is not
    c7 = build_chain([cyc("(1,2,3,4,5,6,7)", 7)])
    assert transitivity_degree(c7, "homogeneous") == 1
    assert transitivity_degree(build_natural(6).chain, "homogeneous") >= 4


def test_blocks():
    assert minimal_blocks(build_natural(4, "symmetric").chain).primitive
    v = minimal_blocks(build_chain([cyc("(1,2,3,4,5,6)", 6)]))
    assert not v.primitive and v.block_size == 2 and v.block_count == 3
    for b in v.blocks:
        assert len(b) == 2


def test_blocks_need_transitive():
    with pytest.raises(ChainError):
        minimal_blocks(build_chain([cyc("(1,2)", 4)]))


def test_random_trivial():
    ch = build_chain([], 4)
    assert ch.random_element(0).is_identity()


def test_random_uniform_a5():
    a5 = build_natural(5).chain
    elems = a5.elements()
    index = {e.tobytes(): i for i, e in enumerate(elems)}
    rng = np.random.default_rng(11)
    counts = np.zeros(60)
    for _ in range(6000):
        x = a5.random_array(rng)
        assert a5.contains_array(x)
        counts[index[x.tobytes()]] += 1
    assert stats.chisquare(counts).pvalue > 0.001


def test_order_limit():
    with pytest.raises(OrderLimitExceeded):
        build_chain(build_natural(7).generators, order_limit=100)


def test_stabilizer_subchain():
    s5 = build_natural(5, "symmetric").chain
    st = build_chain(s5.generator_arrays(), 5, base_prefix=(4,))
    assert st.stabilizer(1).order == 24


def test_elements_distinct():
    e = build_psl2(7).chain.elements()
    assert len(np.unique(e, axis=0)) == 168


def test_transitive():
    assert is_transitive(build_psl2(5).chain)
    assert not is_transitive(build_chain([cyc("(1,2,3)", 5)]))


def test_base_prefix():
    ch = build_chain(build_natural(6).generators, base_prefix=(3, 1))
    assert ch.base[:2] == (3, 1)
    assert ch.order == 360


def test_point_out_of_range():
    with pytest.raises(ChainError):
        orbit([Permutation.identity(3)], 5)
