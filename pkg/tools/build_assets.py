"""Derive the bundled group records and case files.

    python tools/build_assets.py --rows 1-8

Every generator set is produced from a standard construction or a seeded
search, and the resulting order is checked before anything is written.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent))

from assetlib import (chain_of, mats_to_perms, object_stabilizer, reduce_gens,  # noqa: E402
                      restrict, search_subgroup, set_key, inv_mod, set_stabilizer, write_cases,
                      write_matrix_group, write_perm_group, factorial_half)
from factorforge.catalog import build_natural, build_psl2  # noqa: E402
from factorforge.chain import build_chain, is_transitive  # noqa: E402
from factorforge.factorize import verify_factorization  # noqa: E402
from factorforge.perm import parse_cycles  # noqa: E402
from factorforge.recognize import (alternating_spectrum, derived_subgroup,  # noqa: E402
                                   recognize_alternating, search_factor_subgroup)

BUILDERS = {}


def row(*numbers):
    def deco(fn):
        for n in numbers:
            BUILDERS[n] = fn
        return fn
    return deco


def case(row_no, L, H, K, n, inter, label="", holds=True):
    return {"row": row_no, "L": L, "H": H, "K": K, "n": n, "expect_holds": holds,
            "expected_intersection_order": None if inter is None else str(inter),
            **({"label": label} if label else {})}


def check(L_chain, H_gens, K_gens, n):
    h = build_chain(H_gens, L_chain.degree)
    assert recognize_alternating(h, n).accepted, "H is not A_n"
    v = verify_factorization(L_chain, H_gens, K_gens)
    assert v.holds, f"no factorization (orbit {v.orbit_size} of {v.index})"
    return v.intersection_order


def arrays(handle):
    return [g.images for g in handle.generators]


def perm(text, d):
    return parse_cycles(text, d).images


# ----- rows 1-3: alternating groups --------------------------------------

def natural_pair(m: int):
    """A_{m-2} on the first m-2 points and S_{m-2} twisted by (m-1, m)."""
    k = m - 2
    a = arrays(build_natural(k))
    a = [np.concatenate([g, np.arange(k, m, dtype=g.dtype)]) for g in a]
    t = perm(f"({m - 1},{m})", m)
    s1 = perm(f"(1,2)({m - 1},{m})", m)
    cyc = perm("(" + ",".join(str(i) for i in range(1, k + 1)) + ")", m)
    s2 = cyc if k % 2 else t[cyc]
    return a, [s1, s2]


@row(1, 2, 3)
def rows_alternating(r):
    m, n = {1: (6, 5), 2: (10, 6), 3: (15, 7)}[r]
    L = build_natural(m)
    write_perm_group(f"A{m}", arrays(L), L.order, "natural alternating group",
                     {"simple": True}, kind="natural")
    a, s = natural_pair(m)
    write_perm_group(f"A{m}__A{m - 2}", a, factorial_half(m - 2), f"A{m - 2} on points 1..{m - 2}")
    write_perm_group(f"A{m}__S{m - 2}", s, math.factorial(m - 2),
                     f"S{m - 2} on points 1..{m - 2}, odd elements times ({m - 1},{m})")
    if r in (1, 2):
        q = 5 if r == 1 else 9
        H = build_psl2(q)
        hname = f"A{m}__PSL2_{q}"
        hg = arrays(H)
        write_perm_group(hname, hg, H.order, f"PSL2({q}) on the projective line",
                         {"alternating": n})
    else:
        hg = _a7_on_15()
        hname = "A15__A7_on_PG3_2"
        write_perm_group(hname, hg, factorial_half(7),
                         "A7 inside GL4(2) acting on the 15 points of PG(3,2); seeded search",
                         {"alternating": 7})
    cases = []
    for kn, korder in ((f"A{m - 2}", factorial_half(m - 2)), (f"S{m - 2}", math.factorial(m - 2))):
        kg = a if kn.startswith("A") else s
        inter = check(L.chain, hg, kg, n)
        assert inter == factorial_half(n) * korder // L.order
        cases.append(case(r, f"A{m}", hname, f"A{m}__{kn}", n, inter))
    write_cases(r, cases)


def _a7_on_15():
    mats = []
    for i in range(4):
        for j in range(4):
            if i != j:
                e = np.eye(4, dtype=np.int64)
                e[i, j] = 1
                mats.append(e)
    gl = chain_of(mats_to_perms(mats, 2, 1, "vectors"))
    assert gl.order == 20160
    pair, h, _ = search_subgroup(gl, 2520, seed=3, attempts=5000, predicate=is_transitive,
                                 spectrum=alternating_spectrum(7))
    return pair


# ----- row 4: M12 ------------------------------------------------------------

M12_GENS = ["(1,2,3,4,5,6,7,8,9,10,11)", "(3,7,11,8)(4,10,5,6)",
            "(1,12)(2,11)(3,6)(4,8)(5,9)(7,10)"]


@row(4)
def row_m12(r):
    g = [perm(t, 12) for t in M12_GENS]
    write_perm_group("M12", g, 95040, "standard permutation generators on 12 points",
                     {"simple": True})
    write_perm_group("M12__M11", g[:2], 7920, "stabilizer of point 12", {"simple": True})
    L = build_chain(g)
    res = search_factor_subgroup(L, [parse_cycles(t, 12) for t in M12_GENS[:2]], 5, 5000, 4,
                                 orders=(2, 3))
    assert res.found
    hg = [h.images for h in res.h_gens]
    write_perm_group("M12__A5", hg, 60,
                     f"transitive A5; seeded search (seed 4, attempt {res.attempt})",
                     {"alternating": 5})
    inter = check(L, hg, g[:2], 5)
    write_cases(r, [case(r, "M12", "M12__A5", "M12__M11", 5, inter)])


# ----- rows 5-8: PSL2(p) ---------------------------------------------------

@row(5, 6, 7, 8)
def rows_psl2(r):
    p = {5: 11, 6: 19, 7: 29, 8: 59}[r]
    L = build_psl2(p)
    lg = arrays(L)
    name = f"PSL2_{p}"
    write_perm_group(name, lg, L.order, "x -> x+1, x -> z^2 x, x -> -1/x on the projective line",
                     {"simple": True}, kind="psl2")
    shift, scale = lg[0], lg[1]
    if p == 29:
        ks = {"29_7": ([shift, scale[scale]], 29 * 7), "29_14": ([shift, scale], 29 * 14)}
    elif p == 11:
        ks = {"11": ([shift], 11), "11_5": ([shift, scale], 55)}
    else:
        ks = {f"{p}_{(p - 1) // 2}": ([shift, scale], p * (p - 1) // 2)}
    res = search_factor_subgroup(L, [shift, scale], 5, 5000, p, orders=(2, 3))
    assert res.found
    hg = [h.images for h in res.h_gens]
    write_perm_group(f"{name}__A5", hg, 60,
                     f"A5 inside PSL2({p}); seeded search (seed {p}, attempt {res.attempt})",
                     {"alternating": 5})
    cases = []
    for label, (kg, korder) in ks.items():
        kname = f"{name}__{label}"
        struct = label.replace("_", ":")
        write_perm_group(kname, kg, korder,
                         f"{struct}: translations x -> x+1" + (" and squares scaling" if len(kg) > 1 else ""))
        assert build_chain(kg).order == korder
        inter = check(L.chain, hg, kg, 5)
        cases.append(case(r, name, f"{name}__A5", kname, 5, inter))
    write_cases(r, cases)


# ----- rows 9 and 11: PSL4(3) and PSp4(3) on 40 points ----------------------

def elementary(n, i, j, a=1):
    e = np.eye(n, dtype=np.int64)
    e[i, j] = a
    return e


def symplectic_gram(n):
    m = n // 2
    J = np.zeros((n, n), dtype=np.int64)
    for i in range(m):
        J[i, n - 1 - i] = 1
        J[n - 1 - i, i] = -1
    return J


def transvection(B, v, p, a=1):
    """x -> x + a B(x, v) v with B(x, y) = x B y^T, as a matrix on row vectors."""
    return (np.eye(len(v), dtype=np.int64) + a * np.outer(B @ v, v)) % p


def point_stabilizer(chain, point, order, seed=0):
    c = build_chain(list(chain.generator_arrays()), chain.degree, base_prefix=(point,))
    gens = c.stabilizer(1).strong_generators
    return reduce_gens([g.images for g in gens], order, seed)


_cache = {}


def psp4_3():
    if "psp4" not in _cache:
        J = symplectic_gram(4) % 3
        vs = [np.array(v) for v in ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
                                     (1, 1, 0, 0), (0, 1, 1, 0), (1, 0, 0, 1))]
        mats = [transvection(J, v, 3) for v in vs]
        perms = mats_to_perms(mats, 3, 1, "projective")
        c = build_chain(perms)
        assert c.order == 25920, c.order
        _cache["psp4"] = (mats, c)
    return _cache["psp4"]


@row(9, 11)
def rows_40(r):
    sl = [elementary(4, i, i + 1) for i in range(3)] + [elementary(4, i + 1, i) for i in range(3)]
    lperm = mats_to_perms(sl, 3, 1, "projective")
    L4 = build_chain(lperm)
    assert L4.order == 6065280
    spm, Sp = psp4_3()
    write_matrix_group("PSL4_3", 3, 1, "projective", sl, L4.order, 40,
                       "elementary transvections of SL4(3) on the 40 points of PG(3,3)",
                       {"simple": True})
    write_matrix_group("PSp4_3", 3, 1, "projective", spm, Sp.order, 40,
                       "symplectic transvections for the antidiagonal form on PG(3,3)",
                       {"simple": True})
    k1 = point_stabilizer(Sp, 0, 648)
    k1c = build_chain(k1)
    k2c = derived_subgroup(k1c)
    assert k2c.order == 216
    k2 = reduce_gens([g.images for g in k2c.strong_generators], 216)
    kp = point_stabilizer(L4, 0, 6065280 // 40)
    if "A6" not in _cache:
        from factorforge.perm import Permutation
        res = search_factor_subgroup(Sp, [Permutation._wrap(g) for g in k2], 6, 20000, 9,
                                     orders=(4, 5))
        assert res.found, "no A6 found"
        _cache["A6"] = ([h.images for h in res.h_gens], res.attempt)
    hg, attempt = _cache["A6"]
    write_perm_group("PSp4_3__A6", hg, 360,
                     f"A6 inside PSp4(3); seeded search (seed 9, attempt {attempt})",
                     {"alternating": 6})
    write_perm_group("PSp4_3__3^1+2_2A4", k1, 648, "stabilizer of a point of PG(3,3)")
    write_perm_group("PSp4_3__3^1+2_Q8", k2, 216, "derived subgroup of the point stabilizer")
    write_perm_group("PSL4_3__3^3_L3_3", kp, 6065280 // 40, "stabilizer of a point of PG(3,3)")
    if r == 9:
        inter = check(L4, hg, kp, 6)
        write_cases(9, [case(9, "PSL4_3", "PSp4_3__A6", "PSL4_3__3^3_L3_3", 6, inter)])
    else:
        cases = []
        for kname, kg in (("PSp4_3__3^1+2_Q8", k2), ("PSp4_3__3^1+2_2A4", k1)):
            inter = check(Sp, hg, kg, 6)
            cases.append(case(11, "PSp4_3", "PSp4_3__A6", kname, 6, inter))
        write_cases(11, cases)


# ----- row 10: PSU3(5) on 126 isotropic points --------------------------------

def psu3_5():
    from factorforge.gf import field_make
    f = field_make(5, 2)
    sigma = np.array([f.power(a, 5) for a in range(25)])
    J = np.array([[0, 0, 1], [0, 1, 0], [1, 0, 0]])

    def herm(u, v):
        acc = 0
        for i in range(3):
            acc = f.add[acc, f.mul[u[i], sigma[v[2 - i]]]]
        return int(acc)

    vecs = [np.array(v) for v in np.ndindex(25, 25, 25)][1:]
    iso = [v for v in vecs if herm(v, v) == 0]
    a = 5  # the field element x, with x^5 = -x
    rng = np.random.default_rng(10)
    mats = []
    for _ in range(4):
        v = iso[int(rng.integers(len(iso)))]
        col = np.array([sigma[v[2 - i]] for i in range(3)])  # h(x, v) = x . col
        m = np.eye(3, dtype=np.int64)
        for i in range(3):
            for j in range(3):
                m[i, j] = f.add[m[i, j], f.mul[a, f.mul[col[i], v[j]]]]
        mats.append(m)
    perms = mats_to_perms(mats, 5, 2, "projective")
    from factorforge.gf import vector_domain
    digits, _ = vector_domain(5, 2, 3, "projective")
    iso_pts = [i for i, v in enumerate(digits) if herm(v, v) == 0]
    assert len(iso_pts) == 126
    g = restrict(perms, iso_pts)
    c = build_chain(g)
    assert c.order == 126000, c.order
    return g, c


@row(10)
def row_psu(r):
    g, L = psu3_5()
    g = reduce_gens(g, L.order, 10)
    L = build_chain(g)
    write_perm_group("PSU3_5", g, 126000,
                     "unitary transvections over GF(25) on the 126 isotropic points",
                     {"simple": True})
    k = point_stabilizer(L, 0, 1000)
    write_perm_group("PSU3_5__5^1+2_8", k, 1000, "stabilizer of an isotropic point")
    from factorforge.perm import Permutation
    res = search_factor_subgroup(L, [Permutation._wrap(x) for x in k], 7, 20000, 10)
    assert res.found
    hg = [h.images for h in res.h_gens]
    write_perm_group("PSU3_5__A7", hg, 2520,
                     f"A7 inside PSU3(5); seeded search (seed 10, attempt {res.attempt})",
                     {"alternating": 7})
    inter = check(L, hg, k, 7)
    write_cases(10, [case(10, "PSU3_5", "PSU3_5__A7", "PSU3_5__5^1+2_8", 7, inter)])


# ----- rows 12-14: Sp6(2) on 63 vectors ------------------------------------

def antidiagonal(n):
    J = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        J[i, n - 1 - i] = 1
    return J


def subgroup_normalizer(chain, t, seed=0):
    """Normalizer of <t> for t of prime order 3, as stabilizer of {t, t^-1} under conjugation."""
    from factorforge.chain import _inv

    def act(o, g):
        gi = _inv(g)
        return np.stack(sorted([g[x[gi]] for x in o], key=lambda a: a.tobytes()))

    obj = np.stack(sorted([t, t[t]], key=lambda a: a.tobytes()))
    return object_stabilizer(chain, obj, act, lambda o: o.tobytes(), seed)


def sp6_2():
    if "sp6" in _cache:
        return _cache["sp6"]
    from factorforge.perm import Permutation, array_order
    J = antidiagonal(6)
    allv = [np.array(v) for v in np.ndindex(*(2,) * 6)][1:]
    qplus = lambda v: (v[0] * v[5] + v[1] * v[4] + v[2] * v[3]) % 2  # noqa: E731
    qminus = lambda v: (qplus(v) + v[2] + v[3]) % 2  # noqa: E731
    rng = np.random.default_rng(12)
    idx = rng.choice(len(allv), 10, replace=False)
    sp = [transvection(J, allv[i], 2) for i in idx]
    Sp = build_chain(mats_to_perms(sp, 2, 1, "vectors"))
    assert Sp.order == 1451520
    om = [transvection(J, v, 2) for v in allv if qminus(v)]
    om_perms = reduce_gens(mats_to_perms(om, 2, 1, "vectors"), 51840, 12)
    O6m = build_chain(om_perms)
    op = [transvection(J, v, 2) for v in allv if qplus(v)]
    O6p = build_chain(mats_to_perms(op, 2, 1, "vectors"))
    assert (O6m.order, O6p.order) == (51840, 40320)
    A8 = derived_subgroup(O6p)
    a8 = reduce_gens([g.images for g in A8.strong_generators], 20160, 12)
    g2, _, g2_at = search_subgroup(Sp, 12096, 1, 20000)
    l83, L83, l83_at = search_subgroup(Sp, 1512, 2, 50000)
    l8 = reduce_gens([g.images for g in derived_subgroup(L83).strong_generators], 504, 12)
    big = None
    for i in range(200):
        x = O6m.random_array(np.random.default_rng([13, i]))
        o = array_order(x)
        if o % 3:
            continue
        t = (Permutation._wrap(x) ** (o // 3)).images
        gens, orb = subgroup_normalizer(O6m, t, seed=i)
        if orb == 40:
            big = reduce_gens(gens, 1296, 13)
            break
    Big = build_chain(big)
    small = _o3_sylow2(Big)
    out = {
        "mats": sp, "Sp": Sp, "A8": a8,
        "K": {
            "3^1+2_8_2": (small, 432, "O3 of 3^(1+2):2S4 extended by a Sylow 2-subgroup "
                          "containing an element of order 8"),
            "3^1+2_2S4": (big, 1296, "normalizer in O6-(2) of a subgroup of order 3 "
                          "with 40 conjugates"),
            "PSL2_8": (l8, 504, "derived subgroup of PSL2(8):3"),
            "PSL2_8_3": (l83, 1512, f"seeded search (seed 2, attempt {l83_at})"),
            "PSU3_3_2": (g2, 12096, f"G2(2); seeded search (seed 1, attempt {g2_at})"),
            "PSU4_2_2": (om_perms, 51840, "O6-(2): orthogonal transvections for "
                         "x1x6+x2x5+x3x4+x3^2+x4^2"),
        },
    }
    _cache["sp6"] = out
    return out


def _o3_sylow2(big):
    """O_3(big) (normal Sylow 3 of its second derived subgroup) times a Sylow 2-subgroup."""
    from factorforge.perm import Permutation, array_order
    d2 = derived_subgroup(derived_subgroup(big))
    rng = np.random.default_rng(14)

    def powered(chain, pred):
        while True:
            x = chain.random_array(rng)
            o = array_order(x)
            k = pred(o)
            if k:
                return (Permutation._wrap(x) ** (o // k)).images

    o3 = []
    while build_chain(o3, big.degree).order < 27:
        o3.append(powered(d2, lambda o: 3 if o % 3 == 0 else 0))
    assert build_chain(o3, big.degree).order == 27
    a = powered(big, lambda o: 8 if o % 8 == 0 else 0)
    while True:
        b = powered(big, lambda o: o & -o if o % 2 == 0 else 0)
        if build_chain([a, b]).order == 16:
            break
    gens = reduce_gens(o3 + [a, b], 432, 14)
    assert build_chain(gens).order == 432
    return gens


@row(12, 13, 14)
def rows_sp6(r):
    from factorforge.perm import Permutation
    d = sp6_2()
    Sp = d["Sp"]
    write_matrix_group("Sp6_2", 2, 1, "vectors", d["mats"], Sp.order, 63,
                       "symplectic transvections for the antidiagonal form on GF(2)^6",
                       {"simple": True})
    for kname, (kg, korder, prov) in d["K"].items():
        write_perm_group(f"Sp6_2__{kname}", kg, korder, prov)
    n = {12: 6, 13: 7, 14: 8}[r]
    a8 = d["A8"]
    if n == 8:
        hg, prov = a8, "Omega6+(2): derived subgroup of the orthogonal group of x1x6+x2x5+x3x4"
    else:
        g2 = [Permutation._wrap(x) for x in d["K"]["PSU3_3_2"][0]]
        res = search_factor_subgroup(Sp, g2, n, 20000, 12 + n, within=build_chain(a8))
        assert res.found
        hg = [h.images for h in res.h_gens]
        prov = f"A{n} inside Omega6+(2); seeded search (seed {12 + n}, attempt {res.attempt})"
    write_perm_group(f"Sp6_2__A{n}", hg, factorial_half(n), prov, {"alternating": n})
    knames = ["PSU3_3_2"] if n < 8 else list(d["K"])
    cases = []
    for kname in knames:
        inter = check(Sp, hg, d["K"][kname][0], n)
        cases.append(case(r, "Sp6_2", f"Sp6_2__A{n}", f"Sp6_2__{kname}", n, inter))
    write_cases(r, cases)


# ----- rows 15-19 and 22-25: the 8-dimensional GF(2) module -----------------
#
# Coordinates b_1..b_8 of the heart of the 9-point permutation module
# (b_i = e_i + e_9).  The symplectic form is all ones off the diagonal and
# Q9(x) = sum x_i + sum_{i<j} x_i x_j is the quadratic form of that heart.

def _gf2_world():
    if "gf2" in _cache:
        return _cache["gf2"]
    from factorforge.gf import vector_domain
    from factorforge.perm import Permutation, array_order
    from assetlib import object_orbit
    B = np.ones((8, 8), dtype=np.int64) - np.eye(8, dtype=np.int64)
    digits, lookup = vector_domain(2, 1, 8, "vectors")
    digits = np.asarray(digits)

    def q9(v):
        w = np.atleast_2d(v).sum(axis=1)
        return (w + w * (w - 1) // 2) % 2

    def code(v):
        return int(lookup[int("".join(str(int(x)) for x in v), 2)])

    qv = q9(digits)
    nonsing = digits[qv == 1]
    rng = np.random.default_rng(15)
    om = []
    for _ in range(6):
        u, w = nonsing[rng.choice(len(nonsing), 2, replace=False)]
        om.append(transvection(B, u, 2) @ transvection(B, w, 2) % 2)
    Om = build_chain(mats_to_perms(om, 2, 1, "vectors"))
    assert Om.order == 174182400
    sp = [transvection(B, digits[i], 2) for i in rng.choice(255, 12, replace=False)]
    Sp = build_chain(mats_to_perms(sp, 2, 1, "vectors"))
    assert Sp.order == 47377612800
    v0 = int(np.flatnonzero(qv == 1)[0])
    vmin = digits[v0]
    qminus = (qv + (digits @ B @ vmin) % 2) % 2
    assert int((qminus == 0).sum()) == 119
    ominus_vecs = digits[qminus == 1]
    om_minus = [transvection(B, ominus_vecs[i], 2) for i in rng.choice(len(ominus_vecs), 10, replace=False)]
    Ominus = build_chain(mats_to_perms(om_minus, 2, 1, "vectors"))
    assert Ominus.order == 394813440, Ominus.order

    def stab_point(chain, pt, order):
        c = build_chain(list(chain.generator_arrays()), chain.degree, base_prefix=(pt,))
        return reduce_gens([g.images for g in c.stabilizer(1).strong_generators], order, 15)

    sp6 = stab_point(Om, v0, 1451520)
    sp6_p = [Permutation._wrap(x) for x in sp6]
    res = search_factor_subgroup(Om, sp6_p, 9, 20000, 25)
    assert res.found
    H = {9: ([h.images for h in res.h_gens],
             f"A9 in Omega8+(2) transitive on the 120 nonsingular vectors; seeded search "
             f"(seed 25, attempt {res.attempt})")}
    within = build_chain(H[9][0])
    for n in (8, 7, 6):
        r = search_factor_subgroup(Om, sp6_p, n, 40000, 25 + n, within=within)
        assert r.found, n
        H[n] = ([h.images for h in r.h_gens],
                f"A{n} inside the A{n + 1} above; seeded search (seed {25 + n}, attempt {r.attempt})")
        within = build_chain(H[n][0])

    # A10 on the heart of the 10-point module: b_i = e_i + e_10, b_9 = b_1 + ... + b_8
    def heart10(s):
        vec = [np.eye(8, dtype=np.int64)[k] for k in range(8)] + [np.ones(8, dtype=np.int64),
                                                                  np.zeros(8, dtype=np.int64)]
        return np.array([(vec[s[i]] + vec[s[9]]) % 2 for i in range(8)])

    a10 = [heart10([1, 2, 0, 3, 4, 5, 6, 7, 8, 9]), heart10([0, 2, 3, 4, 5, 6, 7, 8, 9, 1])]
    a10p = mats_to_perms(a10, 2, 1, "vectors")
    assert build_chain(a10p).order == factorial_half(10)

    K = {"Sp6_2": (sp6, 1451520, "stabilizer of a nonsingular vector")}
    h9, h8 = H[9][0], H[8][0]
    # (3 x U4(2)):2 as the normalizer of a subgroup of order 3 with 1120 conjugates
    for i in range(400):
        x = Om.random_array(np.random.default_rng([30, i]))
        o = array_order(x)
        if o % 3:
            continue
        t = (Permutation._wrap(x) ** (o // 3)).images
        gens, orb = subgroup_normalizer(Om, t, seed=i)
        if orb != 1120:
            continue
        if (verify_factorization(Om, h9, gens).holds and verify_factorization(Om, h8, gens).holds):
            break
    N = build_chain(gens)
    D1 = derived_subgroup(N)
    D2 = derived_subgroup(D1)
    assert (N.order, D1.order, D2.order) == (155520, 77760, 25920)
    rng2 = np.random.default_rng(31)
    while True:
        x = N.random_array(rng2)
        o = array_order(x)
        if o % 2:
            continue
        t = (Permutation._wrap(x) ** (o // 2)).images
        if D1.contains_array(t):
            continue
        u42 = reduce_gens([g.images for g in D2.strong_generators] + [t], 51840, 31)
        if build_chain(u42).order == 51840:
            break
    K["3xPSU4_2_2"] = (reduce_gens(gens, 155520, 30), 155520,
                       "normalizer of a subgroup of order 3 with 1120 conjugates")
    K["3xPSU4_2"] = (reduce_gens([g.images for g in D1.strong_generators], 77760, 30), 77760,
                     "derived subgroup of (3 x PSU4(2)):2")
    K["PSU4_2"] = (reduce_gens([g.images for g in D2.strong_generators], 25920, 30), 25920,
                   "second derived subgroup of (3 x PSU4(2)):2")
    K["PSU4_2_2"] = (u42, 51840, "PSU4(2) extended by an involution of (3 x PSU4(2)):2")

    # S8: stabilizer of a plus-type 2-space {u, w, u + w = v0}
    sing = np.flatnonzero(qv == 0)
    for i in sing:
        j = code((digits[i] + vmin) % 2)
        if qv[j] == 0:
            line = [int(i), j, v0]
            break
    s8, orb = set_stabilizer(Om, line)
    assert orb == 4320
    S8 = build_chain(s8)
    A8 = derived_subgroup(S8)
    K["S8"] = (reduce_gens(s8, 40320, 32), 40320, "stabilizer of a hyperbolic line")
    K["A8_hyperbolic"] = (reduce_gens([g.images for g in A8.strong_generators], 20160, 32), 20160,
               "derived subgroup of the hyperbolic line stabilizer")

    # totally singular 4-spaces: pick the class on which the A9 is transitive
    def span(vs):
        pts = set()
        for c in np.ndindex(*(2,) * len(vs)):
            if any(c):
                pts.add(code(np.array(c) @ np.array(vs) % 2))
        return sorted(pts)

    act = lambda o, g: np.sort(g[o])  # noqa: E731
    h9_gens = list(build_chain(h9).generator_arrays())
    om_gens = list(Om.generator_arrays())
    rng3 = np.random.default_rng(33)
    W = None
    while W is None:
        vs = []
        for _ in range(4):
            cands = [i for i in sing
                     if all(int(digits[i] @ B @ v) % 2 == 0 for v in vs)
                     and int(i) not in (span(vs) if vs else [])]
            if not cands:
                break
            vs.append(digits[cands[int(rng3.integers(len(cands)))]])
        if len(vs) < 4:
            continue
        pts = np.array(span(vs))
        if len(pts) != 15 or (qv[pts] != 0).any():
            continue
        if len(object_orbit(h9_gens, pts, act, set_key)) == 135:
            W = pts
    orbW = object_orbit(om_gens, W, act, set_key)
    assert len(orbW) == 135
    Wc = next(o for o, _ in orbW.values() if not set(o.tolist()) & set(W.tolist()))
    par, orb = set_stabilizer(Om, W)
    P = build_chain(par, base_prefix=tuple(W.tolist()))
    assert P.order == 64 * 20160
    U = P.stabilizer(15)
    assert U.order == 64
    u_gens = [g.images for g in U.strong_generators]
    pair = np.concatenate([W, Wc])
    levi, orb = object_stabilizer(Om, pair, lambda o, g: np.concatenate([np.sort(g[o[:15]]), np.sort(g[o[15:]])]),
                                  lambda o: o.astype(np.int32).tobytes(), 34)
    assert orb == 8640
    Levi = build_chain(levi)
    rng4 = np.random.default_rng(35)
    while True:
        x = Levi.random_array(rng4)
        if array_order(x) == 15:
            s15 = x
            break
    powers = [s15]
    while len(powers) < 14:
        powers.append(s15[powers[-1]])

    def act_cyc(o, g):
        from factorforge.chain import _inv
        gi = _inv(g)
        return np.stack(sorted([g[x[gi]] for x in o], key=lambda a: a.tobytes()))

    cyc = np.stack(sorted(powers, key=lambda a: a.tobytes()))
    nor, orb = object_stabilizer(Levi, cyc, act_cyc, lambda o: o.tobytes(), 36)
    Nor = build_chain(nor)
    assert Nor.order == 60
    while True:
        x = Nor.random_array(rng4)
        if array_order(x) == 4:
            phi = x
            break
    s5 = powers[4]
    cent = [e for e in U.elements() if np.array_equal(e[s5], s5[e])]
    assert len(cent) == 16
    fam = {
        "2^6_A8": (par, 64 * 20160, "stabilizer of a totally singular 4-space W"),
        "2^6_15": (u_gens + [s15], 960, "unipotent radical 2^6 with a Singer cycle of the Levi A8"),
        "2^6_15.2": (u_gens + [s15, phi[phi]], 1920, "2^6:15 with the square of a Frobenius element"),
        "2^6_15.4": (u_gens + [s15, phi], 3840, "2^6:15 with a Frobenius element of order 4"),
        "2^4_15.4": (cent + [s15, phi], 960, "centralizer in 2^6 of the Singer cycle's fifth power, with 15:4"),
    }
    for name, (g, order, prov) in fam.items():
        g = reduce_gens(g, order, 37)
        fam[name] = (g, order, prov)
    # 2^4:A5 with A5 = SL2(4) transitive on the 15 vectors of W
    att = 0
    while True:
        a5, _, att = search_subgroup(Levi, 60, 38 + att, 20000,
                                     predicate=lambda h: len(set(np.concatenate(
                                         [g[W] for g in h.generator_arrays()]).tolist()) | set(W.tolist())) == 15
                                     and is_transitive_on(h, W))
        from factorforge.recognize import normal_closure
        UA = build_chain(u_gens + a5)
        comm = []
        from factorforge.chain import _inv
        for u in u_gens:
            for a in a5:
                comm.append(a[u[_inv(a)[_inv(u)]]])
        N4 = normal_closure(UA, comm)
        k = [g.images for g in N4.strong_generators] + a5
        kc = build_chain(k)
        if N4.order == 16 and kc.order == 960 and verify_factorization(Om, h9, k).holds:
            fam["2^4_A5"] = (reduce_gens(k, 960, 39), 960,
                             "[2^6, A5] extended by an A5 of the Levi transitive on W")
            break
        att += 1
    K.update(fam)
    out = {"B": B, "om": om, "Om": Om, "sp": sp, "Sp": Sp, "ominus": om_minus,
           "Ominus": Ominus, "H": H, "a10": a10p, "K": K}
    _cache["gf2"] = out
    return out


def is_transitive_on(h, pts):
    from factorforge.chain import orbit
    from factorforge.perm import Permutation
    o = orbit([Permutation._wrap(g) for g in h.generator_arrays()], int(pts[0]), h.degree)
    return sorted(o.points) == sorted(int(p) for p in pts)


def _write_gf2_common(d):
    write_matrix_group("O8p_2", 2, 1, "vectors", d["om"], 174182400, 255,
                       "products of two orthogonal transvections for Q9 on GF(2)^8",
                       {"simple": True})
    write_matrix_group("Sp8_2", 2, 1, "vectors", d["sp"], 47377612800, 255,
                       "symplectic transvections for the all-ones off-diagonal form on GF(2)^8",
                       {"simple": True})
    write_matrix_group("Sp8_2__SO8m_2", 2, 1, "vectors", d["ominus"], 394813440, 255,
                       "orthogonal transvections for Q9 + B(v0, x)^2, a minus-type form")
    for n, (g, prov) in d["H"].items():
        write_perm_group(f"O8p_2__A{n}", g, factorial_half(n), prov, {"alternating": n})
    write_perm_group("Sp8_2__A10", d["a10"], factorial_half(10),
                     "A10 on the heart of the 10-point permutation module", {"alternating": 10})
    for name, (g, order, prov) in d["K"].items():
        claims = {"alternating": 8} if name == "A8_hyperbolic" else None
        write_perm_group(f"O8p_2__{name}", g, order, prov, claims)


@row(15, 16, 17, 18, 19)
def rows_sp8(r):
    d = _gf2_world()
    _write_gf2_common(d)
    n = r - 9
    hname = "Sp8_2__A10" if n == 10 else f"O8p_2__A{n}"
    hg = d["a10"] if n == 10 else d["H"][n][0]
    inter = check(d["Sp"], hg, [g.images for g in d["Ominus"].generators], n)
    write_cases(r, [case(r, "Sp8_2", hname, "Sp8_2__SO8m_2", n, inter)])


ROW_K = {
    22: ["Sp6_2"],
    23: ["Sp6_2"],
    24: ["Sp6_2", "PSU4_2", "PSU4_2_2", "3xPSU4_2", "3xPSU4_2_2", "A9"],
    25: ["2^4_15.4", "2^6_15", "2^6_15.2", "2^6_15.4", "PSU4_2", "PSU4_2_2", "3xPSU4_2",
         "3xPSU4_2_2", "Sp6_2", "A8_hyperbolic", "S8", "2^4_A5", "2^6_A8"],
}


@row(22, 23, 24, 25)
def rows_o8(r):
    d = _gf2_world()
    _write_gf2_common(d)
    n = r - 16 if r < 25 else 9
    Om = d["Om"]
    cases = []
    for kname in ROW_K[r]:
        hname, hg = f"O8p_2__A{n}", d["H"][n][0]
        if kname == "A9":
            hname, hg = "O8p_2__A8_hyperbolic", d["K"]["A8_hyperbolic"][0]
            kg, kasset = d["H"][9][0], "O8p_2__A9"
        else:
            kg, kasset = d["K"][kname][0], f"O8p_2__{kname}"
        inter = check(Om, hg, kg, n)
        label = ""
        if r == 25 and kname == "S8":
            label = "Omega8+(2) = A9 * S8, absent from an earlier classification"
        elif kname in ("2^4_A5", "2^6_A8"):
            label = "endpoint of 2^4:A5 <= K <= 2^6:A8"
        cases.append(case(r, "O8p_2", hname, kasset, n, inter, label))
    write_cases(r, cases)


# ----- rows 20-21: Omega7(3) on the 1093 projective points -----------------
#
# The heart of the 9-point permutation module over GF(3): b_i = e_i - e_9
# for i = 1..7, Gram matrix 2 on the diagonal and 1 off it, b_8 = -(b_1 + ... + b_7).

OCTONION_TERMS = [(0, 1, 2, 1), (0, 3, 4, 1), (0, 5, 6, 1), (1, 3, 5, 1), (1, 4, 6, -1),
                  (2, 3, 6, -1), (2, 4, 5, -1)]


class ProjectiveSpace:
    """Point lookup and matrix lifting for the projective action over GF(p)."""

    def __init__(self, p, dim, gram):
        from factorforge.gf import vector_domain
        self.p, self.dim, self.gram = p, dim, np.asarray(gram) % p
        digits, self.lookup = vector_domain(p, 1, dim, "projective")
        self.digits = np.asarray(digits)
        self.weights = p ** np.arange(dim - 1, -1, -1)

    def point(self, v):
        v = np.asarray(v) % self.p
        lead = int(v[np.flatnonzero(v)[0]])
        return int(self.lookup[(v * pow(lead, -1, self.p) % self.p) @ self.weights])

    def span(self, vs):
        import itertools
        pts = set()
        for c in itertools.product(range(self.p), repeat=len(vs)):
            if any(c):
                pts.add(self.point(np.array(c) @ np.array(vs)))
        return np.array(sorted(pts))

    def lift(self, perm):
        """The determinant-one matrix inducing ``perm`` (odd dimension)."""
        eye = np.eye(self.dim, dtype=np.int64)
        rows = np.array([self.digits[perm[self.point(eye[i])]] for i in range(self.dim)])
        for i in range(1, self.dim):
            target = perm[self.point(eye[0] + eye[i])]
            lam = next(a for a in range(1, self.p) if self.point(rows[0] + a * rows[i]) == target)
            rows[i] = rows[i] * lam % self.p
        from factorforge.gf import field_make
        if field_make(self.p).det(rows) != 1:
            rows = (-rows) % self.p
        return rows

    def totally_singular(self, q, rng, k, perp_to=None):
        """A random totally singular k-space, optionally inside the perp of ``perp_to``."""
        sing = np.flatnonzero(q == 0)
        if perp_to is not None:
            sing = [i for i in sing if int(self.digits[i] @ self.gram @ perp_to) % self.p == 0]
        ip = lambda x, y: int(x @ self.gram @ y) % self.p  # noqa: E731
        while True:
            vs = []
            for _ in range(k):
                inside = self.span(vs) if vs else np.array([], dtype=np.int64)
                cands = [i for i in sing if all(ip(self.digits[i], x) == 0 for x in vs)
                         and int(i) not in set(inside.tolist())]
                if not cands:
                    break
                vs.append(self.digits[cands[int(rng.integers(len(cands)))]])
            if len(vs) == k:
                return self.span(vs)


def _three_form(space, orthogonal):
    """phi = e123 + e145 + e167 + e246 - e257 - e347 - e356 as a tensor in the working basis."""
    import itertools
    T = np.zeros((7, 7, 7), dtype=np.int64)
    for a, b, c, sg in OCTONION_TERMS:
        for pm in itertools.permutations(range(3)):
            inv = sum(pm[i] > pm[j] for i in range(3) for j in range(i + 1, 3))
            T[tuple((a, b, c)[q] for q in pm)] = sg * (-1) ** inv
    f = inv_mod(orthogonal, space.p)
    return np.einsum("ia,jb,kc,abc->ijk", f, f, f, T) % space.p


def _o7_world():
    if "o7" in _cache:
        return _cache["o7"]
    from classical import QuadraticForm, omega_generators
    from factorforge.chain import _inv
    G = np.ones((7, 7), dtype=np.int64) + np.eye(7, dtype=np.int64)
    form = QuadraticForm(np.triu(G, 1) + np.eye(7, dtype=np.int64), 3)
    om = omega_generators(form, np.random.default_rng(20), 6)
    Om = build_chain(mats_to_perms(om, 3, 1, "projective"))
    assert Om.order == 4585351680
    space = ProjectiveSpace(3, 7, G)
    bvec = [np.eye(7, dtype=np.int64)[k] for k in range(7)] + [np.full(7, 2, dtype=np.int64),
                                                               np.zeros(7, dtype=np.int64)]

    def heart9(s):
        return np.array([(bvec[s[i]] - bvec[s[8]]) % 3 for i in range(7)])

    a9 = mats_to_perms([heart9([1, 2, 0, 3, 4, 5, 6, 7, 8]), heart9([1, 2, 3, 4, 5, 6, 7, 8, 0])],
                       3, 1, "projective")
    a8 = mats_to_perms([heart9([1, 2, 0, 3, 4, 5, 6, 7, 8]), heart9([0, 2, 3, 4, 5, 6, 7, 1, 8])],
                       3, 1, "projective")
    q = form.Q(space.digits)
    K = {}
    # G2(3): stabilizer of the octonion 3-form, in the class the A9 is regular on
    basis = []
    for v in space.digits:
        if len(basis) == 7:
            break
        if int(v @ G @ v) % 3 == 2 and all(int(v @ G @ f) % 3 == 0 for f in basis):
            basis.append(v)
    phi = _three_form(space, np.array(basis))
    u, w = form.nonsingular_vectors(1)[0], form.nonsingular_vectors(2)[0]
    s = inv_mod(form.reflection(u) @ form.reflection(w) % 3, 3)
    phi = np.einsum("ia,jb,kc,abc->ijk", s, s, s, phi) % 3
    lifts = {}

    def act_form(o, g):
        key = g.tobytes()
        if key not in lifts:
            lifts[key] = space.lift(_inv(g))
        h = lifts[key]
        return np.einsum("ia,jb,kc,abc->ijk", h, h, h, o) % 3

    g2, orb = object_stabilizer(Om, phi, act_form, lambda o: o.astype(np.int8).tobytes(), 1)
    assert orb == 1080
    K["G2_3"] = (reduce_gens(g2, 4245696, 20), 4245696,
                 "stabilizer of an octonion 3-form, in the class not containing the natural one")
    vq = int(np.flatnonzero(q == 2)[0])
    st, orb = set_stabilizer(Om, [vq])
    assert orb == 378
    St = build_chain(st)
    L4 = derived_subgroup(St)
    K["PSL4_3_2"] = (reduce_gens(st, 12130560, 21), 12130560,
                     "stabilizer of a nonsingular point with plus-type perp")
    l4 = [g.images for g in L4.strong_generators]
    K["PSL4_3"] = (reduce_gens(l4, 6065280, 21), 6065280, "derived subgroup of PSL4(3):2")
    plane = space.totally_singular(q, np.random.default_rng(5), 3)
    par, orb = set_stabilizer(Om, plane)
    assert orb == 1120
    K["3^3+3_PSL3_3"] = (reduce_gens(par, 4094064, 22), 4094064,
                         "stabilizer of a totally singular plane")
    sub = space.totally_singular(q, np.random.default_rng(100), 3, perp_to=space.digits[vq])
    k33, orb = set_stabilizer(L4, sub)
    assert orb == 40
    K["3^3_PSL3_3"] = (reduce_gens(k33, 151632, 23), 151632,
                       "stabilizer in PSL4(3) of a maximal totally singular subspace of the perp")
    out = {"om": om, "Om": Om, "a9": a9, "a8": a8, "K": K}
    _cache["o7"] = out
    return out


@row(20, 21)
def rows_o7(r):
    d = _o7_world()
    write_matrix_group("O7_3", 3, 1, "projective", d["om"], 4585351680, 1093,
                       "products of two reflections in vectors of norm 1", {"simple": True})
    write_perm_group("O7_3__A9", d["a9"], factorial_half(9),
                     "A9 on the heart of the 9-point permutation module", {"alternating": 9})
    write_perm_group("O7_3__A8", d["a8"], factorial_half(8),
                     "point stabilizer of the natural A9", {"alternating": 8})
    for name, (g, order, prov) in d["K"].items():
        write_perm_group(f"O7_3__{name}", g, order, prov)
    n = 8 if r == 20 else 9
    names = ["3^3+3_PSL3_3"] if r == 20 else ["3^3_PSL3_3", "3^3+3_PSL3_3", "PSL4_3", "PSL4_3_2", "G2_3"]
    hg = d["a8"] if n == 8 else d["a9"]
    cases = []
    for kname in names:
        inter = check(d["Om"], hg, d["K"][kname][0], n)
        cases.append(case(r, "O7_3", f"O7_3__A{n}", f"O7_3__{kname}", n, inter))
    write_cases(r, cases)


# ----- rows 26-27: POmega8+(3) on the 3280 projective points -----------------
#
# The E8 Cartan matrix reduced mod 3 is the Gram matrix.  The rotation
# subgroup of the Weyl group maps onto Omega8+(2) here; the A9 used is found
# inside it, since the A9 of the A8 root subsystem is not transitive on the
# cosets of Omega7(3).

def _e8_world():
    if "e8" in _cache:
        return _cache["e8"]
    from classical import QuadraticForm, omega_generators
    from factorforge.perm import Permutation
    C = 2 * np.eye(8, dtype=np.int64)
    for i, j in [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)]:
        C[i, j] = C[j, i] = -1
    form = QuadraticForm(np.triu(C % 3, 1) + np.eye(8, dtype=np.int64), 3)
    om = omega_generators(form, np.random.default_rng(26), 6)
    Om = build_chain(mats_to_perms(om, 3, 1, "projective"))
    assert Om.order == 4952179814400
    roots = np.eye(8, dtype=np.int64)
    weyl = [form.reflection(roots[0]) @ form.reflection(roots[i]) % 3 for i in range(1, 8)]
    Wp = build_chain(mats_to_perms(weyl, 3, 1, "projective"))
    assert Wp.order == 174182400
    space = ProjectiveSpace(3, 8, C)
    q = form.Q(space.digits)
    st, orb = set_stabilizer(Om, [int(np.flatnonzero(q == 2)[0])])
    assert orb == 1080
    res = search_factor_subgroup(Om, [Permutation._wrap(x) for x in st], 9, 20000, 27, within=Wp)
    assert res.found
    h9 = [h.images for h in res.h_gens]
    par, orb = set_stabilizer(Om, [int(np.flatnonzero(q == 0)[0])])
    assert orb == 1120
    res8 = search_factor_subgroup(Om, [Permutation._wrap(x) for x in par], 8, 20000, 28,
                                  within=build_chain(h9))
    assert res8.found
    out = {"om": om, "Om": Om, "h9": (h9, res.attempt), "h8": ([h.images for h in res8.h_gens], res8.attempt),
           "K": {"O7_3": (reduce_gens(st, 4585351680, 26), 4585351680,
                          "stabilizer of a nonsingular point"),
                 "3^6_PSL4_3": (reduce_gens(par, 4421589120, 26), 4421589120,
                                "stabilizer of a singular point")}}
    _cache["e8"] = out
    return out


@row(26, 27)
def rows_e8(r):
    d = _e8_world()
    write_matrix_group("PO8p_3", 3, 1, "projective", d["om"], 4952179814400, 3280,
                       "products of two reflections for the E8 Cartan form mod 3", {"simple": True})
    h9, att9 = d["h9"]
    h8, att8 = d["h8"]
    write_perm_group("PO8p_3__A9", h9, factorial_half(9),
                     f"A9 inside the image of the Weyl group rotations; seeded search (seed 27, attempt {att9})",
                     {"alternating": 9})
    write_perm_group("PO8p_3__A8", h8, factorial_half(8),
                     f"A8 inside the A9 above; seeded search (seed 28, attempt {att8})",
                     {"alternating": 8})
    for name, (g, order, prov) in d["K"].items():
        write_perm_group(f"PO8p_3__{name}", g, order, prov)
    n = r - 18
    names = ["3^6_PSL4_3"] if n == 8 else ["O7_3", "3^6_PSL4_3"]
    cases = []
    for kname in names:
        inter = check(d["Om"], h8 if n == 8 else h9, d["K"][kname][0], n)
        cases.append(case(r, "PO8p_3", f"PO8p_3__A{n}", f"PO8p_3__{kname}", n, inter))
    write_cases(r, cases)


# ----- row 28: Omega10-(2) on the 1023 nonzero vectors -----------------------
#
# Heart of the 12-point permutation module: b_i = e_i + e_12 for i = 1..10,
# b_11 = b_1 + ... + b_10.

@row(28)
def row_o10(r):
    B = np.ones((10, 10), dtype=np.int64) - np.eye(10, dtype=np.int64)
    from factorforge.gf import vector_domain
    digits, _ = vector_domain(2, 1, 10, "vectors")
    w = np.asarray(digits).sum(axis=1)
    qv = (w + w * (w - 1) // 2) % 2
    assert int((qv == 0).sum()) == 495
    nonsing = np.asarray(digits)[qv == 1]
    rng = np.random.default_rng(28)
    om = []
    for _ in range(6):
        u, v = nonsing[rng.choice(len(nonsing), 2, replace=False)]
        om.append(transvection(B, u, 2) @ transvection(B, v, 2) % 2)
    Om = build_chain(mats_to_perms(om, 2, 1, "vectors"))
    assert Om.order == 25015379558400
    vec = [np.eye(10, dtype=np.int64)[k] for k in range(10)] + [np.ones(10, dtype=np.int64),
                                                                np.zeros(10, dtype=np.int64)]

    def heart12(s):
        return np.array([(vec[s[i]] + vec[s[11]]) % 2 for i in range(10)])

    a12 = mats_to_perms([heart12([1, 2, 0] + list(range(3, 12))),
                         heart12([0] + list(range(2, 12)) + [1])], 2, 1, "vectors")
    st, orb = set_stabilizer(Om, [int(np.flatnonzero(qv == 0)[0])])
    assert orb == 495
    k = reduce_gens(st, 25015379558400 // 495, 28)
    write_matrix_group("O10m_2", 2, 1, "vectors", om, 25015379558400, 1023,
                       "products of two orthogonal transvections for a minus-type form",
                       {"simple": True})
    write_perm_group("O10m_2__A12", a12, factorial_half(12),
                     "A12 on the heart of the 12-point permutation module", {"alternating": 12})
    write_perm_group("O10m_2__2^8_O8m_2", k, 25015379558400 // 495,
                     "stabilizer of a singular vector")
    inter = check(Om, a12, k, 12)
    write_cases(r, [case(r, "O10m_2", "O10m_2__A12", "O10m_2__2^8_O8m_2", 12, inter)])


def parse_rows(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        if "-" in part:
            a, b = part.split("-")
            out.extend(range(int(a), int(b) + 1))
        elif part:
            out.append(int(part))
    return out


# ----- assets outside the table ----------------------------------------------

def build_extras():
    """Transitive M11, PSL3(4) on the projective plane, and a search case."""
    from factorforge.chain import transitivity_degree
    m12 = build_chain([perm(t, 12) for t in M12_GENS])
    pair, h, att = search_subgroup(m12, 7920, seed=11, attempts=20000, orders=(2, 4),
                                   predicate=is_transitive)
    assert transitivity_degree(h) == 3
    write_perm_group("M11", pair, 7920,
                     f"transitive M11 inside M12 on 12 points; seeded search (seed 11, attempt {att})",
                     {"simple": True})
    # SL3(4) by elementary transvections over GF(4) = {0, 1, x, x + 1}
    mats = []
    for i in range(3):
        for j in range(3):
            if i != j:
                for a in (1, 2):
                    e = np.eye(3, dtype=np.int64)
                    e[i, j] = a
                    mats.append(e)
    pg = mats_to_perms(mats, 2, 2, "projective")
    write_matrix_group("PSL3_4", 2, 2, "projective",
                       reduce_mats(mats, pg, 20160), 20160, 21,
                       "elementary transvections of SL3(4) on the 21 points of PG(2,4)",
                       {"simple": True})
    L = build_natural(6)
    stab = [x.images for x in build_chain(arrays(L), 6, base_prefix=(5,)).stabilizer(1).strong_generators]
    res = search_factor_subgroup(L, stab, 5, 400, 1)
    assert res.found
    _dump_case("search_a6", [case(None, "A6", {"search": {"seed": 1, "attempts": 400, "n": 5}},
                                  "A6__A5", 5, 10, "A6 = A5 * A5 with the transitive A5 from a seeded search")])
    write_perm_group("A6__A5", stab, 60, "stabilizer of point 6", {"alternating": 5})


def reduce_mats(mats, perms, order):
    """A short prefix of ``mats`` that still generates the group of the given order."""
    for k in range(2, len(mats) + 1):
        if build_chain(perms[:k]).order == order:
            return mats[:k]
    return mats


def _dump_case(name, cases):
    import json
    from assetlib import CASES
    (CASES / f"{name}.json").write_text(json.dumps(cases, indent=1) + "\n", encoding="utf-8")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rows", default="1-28")
    ap.add_argument("--extras", action="store_true", help="also build the assets outside the table")
    args = ap.parse_args(argv)
    if args.extras:
        build_extras()
        print("extras: written")
    for r in parse_rows(args.rows):
        fn = BUILDERS.get(r)
        if fn is None:
            print(f"row {r}: no builder")
            continue
        fn(r)
        print(f"row {r}: written")


if __name__ == "__main__":
    main()
