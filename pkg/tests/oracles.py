"""Brute-force reference computations, independent of the stabilizer-chain code.

Everything here works on plain tuples and numpy rows and is only meant for
groups of a few thousand elements at most.
"""
from __future__ import annotations

import itertools

import numpy as np


def closure(gens, degree: int) -> np.ndarray:
    """All elements of <gens> as rows, by breadth-first multiplication."""
    ident = tuple(range(degree))
    lists = [tuple(int(x) for x in np.asarray(g)) for g in gens]
    seen = {ident}
    queue = [ident]
    for x in queue:
        for g in lists:
            y = tuple(g[i] for i in x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return np.array(sorted(seen), dtype=np.int64)


def as_set(elems: np.ndarray) -> set[tuple[int, ...]]:
    return {tuple(int(v) for v in row) for row in elems}


def product_set_size(h: np.ndarray, k: np.ndarray) -> int:
    """|HK| where hk means "apply h, then k"."""
    rows = np.concatenate([k[:, x] for x in h], axis=0)
    return len(np.unique(rows, axis=0))


def intersection_size(h: np.ndarray, k: np.ndarray) -> int:
    return len(as_set(h) & as_set(k))


def factorizes(g_order: int, h: np.ndarray, k: np.ndarray) -> bool:
    return product_set_size(h, k) == g_order


def right_cosets(k: np.ndarray, g: np.ndarray) -> list[frozenset]:
    """The right cosets Kx of K in G as frozensets of tuples."""
    out, seen = [], set()
    for x in g:
        if tuple(x) in seen:
            continue
        coset = frozenset(tuple(int(v) for v in x[row]) for row in k)
        seen |= coset
        out.append(coset)
    return out


def element_orders(elems: np.ndarray) -> set[int]:
    out = set()
    d = elems.shape[1]
    for row in elems:
        x = np.arange(d)
        n = 0
        while True:
            x = row[x]
            n += 1
            if (x == np.arange(d)).all():
                break
        out.add(n)
    return out


def ordered_pair_orbit_count(gens, degree: int) -> int:
    pairs = {(a, b) for a in range(degree) for b in range(degree) if a != b}
    lists = [tuple(int(x) for x in np.asarray(g)) for g in gens]
    count = 0
    while pairs:
        start = pairs.pop()
        count += 1
        queue = [start]
        for a, b in queue:
            for g in lists:
                t = (g[a], g[b])
                if t in pairs:
                    pairs.remove(t)
                    queue.append(t)
    return count


# ----- the outer automorphism of S6 ----------------------------------------

def _pgl2_5() -> np.ndarray:
    """PGL2(5) on the projective line {0..4, inf=5}."""
    def mobius(a, b, c, d):
        img = []
        for x in range(6):
            if x == 5:
                img.append(5 if c == 0 else a * pow(c, -1, 5) % 5)
                continue
            den = (c * x + d) % 5
            img.append(5 if den == 0 else (a * x + b) * pow(den, -1, 5) % 5)
        return img

    return closure([mobius(1, 1, 0, 1), mobius(2, 0, 0, 1), mobius(0, 4, 1, 0)], 6)


def s6_outer_automorphism():
    """Map on S6 elements (as tuples) induced by conjugation on the six transitive PGL2(5)."""
    s6 = np.array(list(itertools.permutations(range(6))), dtype=np.int64)
    base = as_set(_pgl2_5())
    conj = []
    for c in s6:
        ci = np.argsort(c)
        # c^-1 x c, apply c^-1 first
        group = frozenset(tuple(int(v) for v in c[np.array(x)[ci]]) for x in base)
        if group not in conj:
            conj.append(group)
    assert len(conj) == 6
    index = {grp: i for i, grp in enumerate(conj)}

    def phi(g) -> tuple[int, ...]:
        g = np.asarray(g, dtype=np.int64)
        gi = np.argsort(g)
        out = []
        for grp in conj:
            img = frozenset(tuple(int(v) for v in g[np.array(x)[gi]]) for x in grp)
            out.append(index[img])
        return tuple(out)

    return phi
