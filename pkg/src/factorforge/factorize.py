"""Deciding G = HK through the action of H on the right cosets of K.

Cosets ``Kx`` are labelled by a canonical representative: the element of
``Kx`` whose images of a fixed reference base (the ambient group's base) are
lexicographically smallest.  H factors G with K exactly when H is transitive
on these labels, and the point stabilizer of that action is H ∩ K.
"""
from __future__ import annotations

from array import array
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .chain import ChainError, StabilizerChain, build_chain, _inv
from .perm import Permutation, PermutationError

__all__ = [
    "CosetOrbit",
    "FactorizationVerdict",
    "DescentReport",
    "FactorizationError",
    "BudgetExhausted",
    "canonical_coset_rep",
    "coset_orbit",
    "subgroup_chain",
    "verify_factorization",
    "descent_check",
]


class FactorizationError(ValueError):
    """Bad input (a subgroup not inside G, N not normal) or a failed internal check."""


class BudgetExhausted(Exception):
    """The coset orbit grew past its budget; the answer is unknown, not negative."""

    def __init__(self, discovered: int, budget: int):
        super().__init__(f"coset orbit exceeded its budget ({discovered} > {budget})")
        self.discovered = discovered
        self.budget = budget


def _chain_of(g) -> StabilizerChain:
    return g if isinstance(g, StabilizerChain) else g.chain


def _arrays(gens, degree: int) -> list[np.ndarray]:
    out = []
    for g in gens:
        a = g.images if isinstance(g, Permutation) else np.asarray(g)
        if a.shape[0] != degree:
            raise PermutationError(f"degree mismatch: {a.shape[0]} vs {degree}")
        out.append(a)
    return out


def _canonical(levels, x: np.ndarray) -> np.ndarray:
    for lev in levels:
        j = int(np.argmin(x[lev.orbit_arr]))
        if j:
            x = x[lev.trans[j]]
    return x


def canonical_coset_rep(k_chain: StabilizerChain, x: Permutation) -> Permutation:
    """Canonical element of the right coset ``Kx``.

    Two inputs give the same output exactly when they lie in the same coset.
    Build ``k_chain`` with the ambient base as ``base_prefix`` so the labels
    are minimal on that base.
    """
    a = x.images
    if a.shape[0] != k_chain.degree:
        raise PermutationError(f"degree mismatch: {a.shape[0]} vs {k_chain.degree}")
    levels = [lev for lev in k_chain.levels if len(lev.orbit) > 1]
    return Permutation._wrap(_canonical(levels, a))


def subgroup_chain(g_chain: StabilizerChain, gens, *, order: int | None = None,
                   check: bool = True) -> StabilizerChain:
    """Chain of ``<gens>`` over the ambient base of ``g_chain``.

    With ``check`` every generator must sift into ``g_chain``.  ``order`` is
    a known group order used as a proven bound.
    """
    arrays = _arrays(gens, g_chain.degree)
    if check:
        for a in arrays:
            if not g_chain.contains_array(a):
                raise FactorizationError("a generator does not lie in the ambient group")
    return build_chain(arrays, g_chain.degree, base_prefix=g_chain.base, order_bound=order)


@dataclass
class CosetOrbit:
    """Orbit of ``<h_gens>`` on the right cosets of K, grown from K itself.

    ``parent[i]`` and ``via[i]`` record the tree: coset ``i`` is coset
    ``parent[i]`` times ``h_gens[via[i]]``.  ``edges`` lists the remaining
    (coset, generator, coset) moves, which give the Schreier generators.
    """

    k_chain: StabilizerChain
    h_gens: list[np.ndarray]
    reference_base: tuple[int, ...]
    keys: list[bytes]
    parent: array
    via: array
    edges: array
    stabilizer_generators: list[Permutation] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.keys)

    @property
    def size(self) -> int:
        return len(self.keys)

    def word(self, i: int) -> list[int]:
        """Generator indices leading from the trivial coset to coset ``i``."""
        out = []
        while i:
            out.append(self.via[i])
            i = self.parent[i]
        return out[::-1]

    def element(self, i: int) -> np.ndarray:
        """An element of H carrying the trivial coset to coset ``i``."""
        a = np.arange(self.k_chain.degree, dtype=self.k_chain.identity().images.dtype)
        for s in self.word(i):
            a = self.h_gens[s][a]
        return a

    def representative(self, i: int) -> Permutation:
        levels = [lev for lev in self.k_chain.levels if len(lev.orbit) > 1]
        return Permutation._wrap(_canonical(levels, self.element(i)))

    def representatives(self) -> list[Permutation]:
        return [self.representative(i) for i in range(len(self))]

    def schreier_generators(self):
        """Yield ``w_i h w_j^-1`` for every non-tree edge, in BFS order."""
        cache: dict[int, np.ndarray] = {}
        e = self.edges
        for t in range(0, len(e), 3):
            i, s, j = e[t], e[t + 1], e[t + 2]
            if i not in cache:
                if len(cache) > 4096:
                    cache.clear()
                cache[i] = self.element(i)
            if j not in cache:
                cache[j] = self.element(j)
            yield _inv(cache[j])[self.h_gens[s][cache[i]]]


def coset_orbit(h_gens: Sequence[Permutation], k_chain: StabilizerChain, budget: int, *,
                reference_base: Sequence[int] | None = None,
                stabilizer: bool = False, h_order: int | None = None) -> CosetOrbit:
    """Breadth-first orbit of the trivial coset of K under right multiplication by H.

    Raises ``BudgetExhausted`` once more than ``budget`` cosets are found.
    ``reference_base`` must be a base of a group containing H and K; without
    it whole image arrays are hashed.  With ``stabilizer`` (which needs
    ``h_order``) generators of H ∩ K are collected.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    d = k_chain.degree
    hs = _arrays(h_gens, d)
    ref = None if reference_base is None else np.asarray(reference_base, dtype=np.int64)
    levels = [lev for lev in k_chain.levels if len(lev.orbit) > 1]

    def key(c: np.ndarray) -> bytes:
        return (c if ref is None else c[ref]).tobytes()

    start = _canonical(levels, k_chain.identity().images)
    index = {key(start): 0}
    keys = [key(start)]
    parent, via, edges = array("q", [0]), array("q", [0]), array("q")
    queue = deque([(0, start)])
    while queue:
        i, c = queue.popleft()
        for s, h in enumerate(hs):
            y = _canonical(levels, h[c])
            ky = key(y)
            j = index.get(ky)
            if j is None:
                j = len(keys)
                if j >= budget:
                    raise BudgetExhausted(j + 1, budget)
                index[ky] = j
                keys.append(ky)
                parent.append(i)
                via.append(s)
                queue.append((j, y))
            else:
                edges.extend((i, s, j))
    orb = CosetOrbit(k_chain, hs, tuple(int(b) for b in (ref if ref is not None else [])),
                     keys, parent, via, edges)
    if stabilizer:
        if h_order is None:
            raise ValueError("h_order is needed to collect stabilizer generators")
        orb.stabilizer_generators = _stabilizer(orb, h_order, k_chain)
    return orb


def _stabilizer(orb: CosetOrbit, h_order: int, k_chain: StabilizerChain) -> list[Permutation]:
    target, rem = divmod(h_order, len(orb))
    if rem:
        raise FactorizationError(f"orbit length {len(orb)} does not divide |H| = {h_order}")
    d = k_chain.degree
    prefix = k_chain.base
    gens: list[np.ndarray] = []
    sub = build_chain([], d, base_prefix=prefix)
    if target > 1:
        for g in orb.schreier_generators():
            if sub.contains_array(g):
                continue
            gens.append(g)
            sub = build_chain(gens, d, base_prefix=prefix, order_bound=target, verify=False)
            if sub.order == target:
                break
    return [Permutation._wrap(g) for g in gens]


@dataclass
class FactorizationVerdict:
    holds: bool
    index: int
    orbit_size: int
    intersection_order: int
    exact: bool
    cross_check_passed: bool
    group_order: int
    h_order: int
    k_order: int
    intersection_generators: list[Permutation] = field(default_factory=list, repr=False)

    def as_dict(self) -> dict:
        return {
            "holds": self.holds,
            "index": str(self.index),
            "orbit_size": str(self.orbit_size),
            "intersection_order": str(self.intersection_order),
            "exact": self.exact,
            "cross_check_passed": self.cross_check_passed,
            "group_order": str(self.group_order),
            "h_order": str(self.h_order),
            "k_order": str(self.k_order),
        }


def verify_factorization(g, h_gens, k_gens, *, budget: int | None = None,
                         h_chain: StabilizerChain | None = None,
                         k_chain: StabilizerChain | None = None) -> FactorizationVerdict:
    """Decide whether G = HK and compute |H ∩ K|.

    ``g`` is a group handle or a stabilizer chain.  Prebuilt chains for H
    and K may be passed; K's must use G's base as a prefix.  ``budget``
    defaults to the index |G:K|, which a genuine orbit never exceeds.
    """
    gc = _chain_of(g)
    if h_chain is None:
        h_chain = subgroup_chain(gc, h_gens)
    else:
        _require_inside(gc, h_chain)
    if k_chain is None:
        k_chain = subgroup_chain(gc, k_gens)
    else:
        _require_inside(gc, k_chain)
        if tuple(k_chain.base[:len(gc.base)]) != tuple(gc.base):
            raise FactorizationError("K's chain must start with the ambient base")
    index, rem = divmod(gc.order, k_chain.order)
    if rem:
        raise FactorizationError("|K| does not divide |G|")
    hs = list(h_gens) if h_gens is not None else h_chain.generators
    if not hs:
        hs = [h_chain.identity()]
    orb = coset_orbit(hs, k_chain, index if budget is None else budget,
                      reference_base=gc.base, stabilizer=True, h_order=h_chain.order)
    holds = len(orb) == index
    stab = orb.stabilizer_generators
    inter_chain = build_chain([s.images for s in stab], gc.degree, base_prefix=gc.base)
    inter = inter_chain.order
    members_ok = all(k_chain.contains(s) and h_chain.contains(s) for s in stab)
    identity_ok = (inter * gc.order == h_chain.order * k_chain.order) == holds
    orbit_ok = inter * len(orb) == h_chain.order
    cross = members_ok and identity_ok and orbit_ok
    if not cross:
        raise FactorizationError(
            f"internal inconsistency: |H∩K|={inter}, orbit={len(orb)}, |H|={h_chain.order}, "
            f"|K|={k_chain.order}, |G|={gc.order}")
    return FactorizationVerdict(holds, index, len(orb), inter, holds and inter == 1, cross,
                                gc.order, h_chain.order, k_chain.order, stab)


def _require_inside(gc: StabilizerChain, sub: StabilizerChain) -> None:
    if sub.degree != gc.degree:
        raise PermutationError(f"degree mismatch: {sub.degree} vs {gc.degree}")
    for a in sub.generator_arrays():
        if not gc.contains_array(a):
            raise FactorizationError("a generator does not lie in the ambient group")


@dataclass
class DescentReport:
    """Which alternative holds for a factorization G = HK and a normal subgroup N.

    Branch 1: H ≤ N and N = H(K ∩ N).  Branch 2: H is not inside N; the
    quotient data are given as orders only.
    """

    branch: int
    h_in_n: bool
    n_order: int
    k_cap_n_order: int
    h_cap_n_order: int
    quotient_order: int
    h_image_order: int
    k_image_order: int
    sub_verdict: FactorizationVerdict | None = None

    def as_dict(self) -> dict:
        out = {k: (str(v) if isinstance(v, int) and not isinstance(v, bool) else v)
               for k, v in self.__dict__.items() if k != "sub_verdict"}
        out["sub_verdict"] = None if self.sub_verdict is None else self.sub_verdict.as_dict()
        return out


def _meet_with_normal(gc: StabilizerChain, n_chain: StabilizerChain, x_gens, x_order: int):
    """Order of X ∩ N and generators for it, via the orbit of X on [G:N]."""
    orb = coset_orbit(x_gens, n_chain, gc.order // n_chain.order, reference_base=gc.base,
                      stabilizer=True, h_order=x_order)
    return x_order // len(orb), orb.stabilizer_generators


def descent_check(g, h_gens, k_gens, n_gens) -> DescentReport:
    """Classify G = HK against a normal subgroup N."""
    gc = _chain_of(g)
    verdict = verify_factorization(gc, h_gens, k_gens)
    if not verdict.holds:
        raise FactorizationError("H and K do not factorize G")
    n_chain = subgroup_chain(gc, n_gens)
    n_arrays = n_chain.generator_arrays()
    for x in gc.generator_arrays():
        xi = _inv(x)
        for n in n_arrays:
            if not n_chain.contains_array(x[n[xi]]):
                raise FactorizationError("N is not normal in G")
    h_chain = subgroup_chain(gc, h_gens)
    k_chain = subgroup_chain(gc, k_gens)
    h_in_n = all(n_chain.contains_array(a) for a in h_chain.generator_arrays())
    kn, kn_gens = _meet_with_normal(gc, n_chain, list(k_gens) or [gc.identity()], k_chain.order)
    if h_in_n:
        hn = h_chain.order
    else:
        hn, _ = _meet_with_normal(gc, n_chain, list(h_gens) or [gc.identity()], h_chain.order)
    quotient = gc.order // n_chain.order
    h_img, k_img = h_chain.order // hn, k_chain.order // kn
    sub = None
    branch = 2
    if h_in_n:
        sub = verify_factorization(n_chain, h_gens, kn_gens or [gc.identity()])
        if not sub.holds:
            raise FactorizationError("internal inconsistency: N is not H(K ∩ N)")
        branch = 1
    return DescentReport(branch, h_in_n, n_chain.order, kn, hn, quotient, h_img, k_img, sub)
