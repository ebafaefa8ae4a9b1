"""Recognition of alternating groups and the randomized search for A_n factors.

A_n is recognized by its order n!/2, simplicity (one-sided Monte-Carlo via
normal closures) and, for n = 8, by an element of order 15.  PSL3(4) has the
same order as A8 and is also simple, but its element orders are
1, 2, 3, 4, 5, 7.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .chain import (ChainError, OrderLimitExceeded, StabilizerChain, _inv, as_rng,
                    build_chain, is_transitive, orbits)
from .factorize import subgroup_chain, verify_factorization, FactorizationVerdict
from .perm import Permutation, array_order

__all__ = [
    "RecognitionVerdict",
    "SimplicityVerdict",
    "SearchResult",
    "order_spectrum",
    "alternating_spectrum",
    "is_simple_mc",
    "normal_closure",
    "derived_subgroup",
    "recognize_alternating",
    "is_regular",
    "search_factor_subgroup",
    "exhaustive_alternating_search",
]

SPECTRUM_CAP = 1_000_000
DEFAULT_TRIALS = 32


def _chain_of(g) -> StabilizerChain:
    return g if isinstance(g, StabilizerChain) else g.chain


def _faithful_points(chain: StabilizerChain) -> np.ndarray:
    """Union of the orbits that meet the base; the group acts faithfully on it."""
    gens = [Permutation._wrap(a) for a in chain.generator_arrays()]
    base = set(chain.base)
    keep = [o for o in orbits(gens, chain.degree) if base.intersection(o)] if gens else []
    pts = sorted(p for o in keep for p in o)
    return np.asarray(pts, dtype=np.int64)


def _block_orders(block: np.ndarray) -> np.ndarray:
    """Element orders of the rows of a 2-d block of image arrays."""
    n, d = block.shape
    start = np.arange(d, dtype=block.dtype)[None, :]
    period = np.zeros((n, d), dtype=np.int64)
    cur = block
    rows = np.arange(n)[:, None]
    step = 1
    while True:
        back = (period == 0) & (cur == start)
        period[back] = step
        if (period > 0).all():
            break
        cur = block[rows, cur]
        step += 1
    return np.lcm.reduce(period, axis=1)


def order_spectrum(chain: StabilizerChain, mode: str = "exhaustive", sample_size: int = 2000,
                   rng=0) -> set[int]:
    """Element orders of the group.

    ``exhaustive`` walks every element (at most ``SPECTRUM_CAP`` of them) and
    returns the exact set; ``sampled`` returns the orders seen among random
    elements, a subset of the true spectrum.
    """
    if mode == "exhaustive":
        if chain.order > SPECTRUM_CAP:
            raise ChainError(f"exhaustive spectrum refused for order {chain.order} > {SPECTRUM_CAP}")
        pts = _faithful_points(chain)
        if len(pts) == 0:
            return {1}
        relabel = np.full(chain.degree, -1, dtype=np.int64)
        relabel[pts] = np.arange(len(pts))
        out: set[int] = set()
        for blk in chain.iter_element_blocks(8192):
            small = relabel[blk[:, pts]].astype(np.int32)
            out.update(np.unique(_block_orders(small)).tolist())
        return out
    if mode == "sampled":
        rng = as_rng(rng)
        return {array_order(chain.random_array(rng)) for _ in range(sample_size)}
    raise ValueError(f"unknown spectrum mode {mode!r}")


def _partitions(n: int, largest: int | None = None):
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


@lru_cache(maxsize=None)
def alternating_spectrum(n: int) -> frozenset[int]:
    """Element orders of A_n, from the cycle types of even permutations."""
    out = set()
    for lam in _partitions(n):
        if sum(k - 1 for k in lam) % 2 == 0:
            out.add(math.lcm(*lam))
    return frozenset(out)


def normal_closure(g, seed_gens) -> StabilizerChain:
    """Chain of the smallest normal subgroup of G containing the seeds."""
    gc = _chain_of(g)
    seeds = [s.images if isinstance(s, Permutation) else np.asarray(s) for s in seed_gens]
    for s in seeds:
        if not gc.contains_array(s):
            raise ChainError("seed does not lie in the group")
    return _closure(gc, seeds)


def _closure(gc: StabilizerChain, seeds: list[np.ndarray]) -> StabilizerChain:
    d, prefix, top = gc.degree, gc.base, gc.order
    ident = gc.identity().images
    gens = [s for s in seeds if not np.array_equal(s, ident)]
    if not gens:
        return build_chain([], d, base_prefix=prefix)
    conj = [(x, _inv(x)) for x in gc.generator_arrays()]
    sub = build_chain(gens, d, base_prefix=prefix, order_bound=top, verify=False)
    queue = list(gens)
    while queue and sub.order < top:
        n = queue.pop()
        for x, xi in conj:
            c = x[n[xi]]
            if not sub.contains_array(c):
                gens.append(c)
                queue.append(c)
                sub = build_chain(gens, d, base_prefix=prefix, order_bound=top, verify=False)
                if sub.order == top:
                    break
    if sub.order == top:
        return sub
    return build_chain(gens, d, base_prefix=prefix, order_bound=top)


def derived_subgroup(g) -> StabilizerChain:
    """Chain of the commutator subgroup [G, G]."""
    gc = _chain_of(g)
    arrs = list(gc.generator_arrays())
    comms = []
    for i, a in enumerate(arrs):
        for b in arrs[i + 1:]:
            # a^-1 b^-1 a b, applied left to right
            comms.append(b[a[_inv(b)[_inv(a)]]])
    return _closure(gc, comms)


@dataclass
class SimplicityVerdict:
    passed: bool
    trials: int
    witness: list[Permutation] = field(default_factory=list)
    witness_order: int | None = None

    def as_dict(self) -> dict:
        return {"passed": self.passed, "trials": self.trials,
                "witness_order": None if self.witness_order is None else str(self.witness_order)}


def is_simple_mc(chain: StabilizerChain, trials: int = DEFAULT_TRIALS, rng=0) -> SimplicityVerdict:
    """One-sided simplicity test.

    A proper nontrivial normal closure is a proof of non-simplicity and is
    returned as the witness; otherwise the group passes after ``trials``
    random nonidentity elements.
    """
    if chain.order < 2:
        raise ChainError("the trivial group is not considered")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = as_rng(rng)
    ident = chain.identity().images
    for t in range(trials):
        x = chain.random_array(rng)
        while np.array_equal(x, ident):
            x = chain.random_array(rng)
        n = _closure(chain, [x])
        if n.order < chain.order:
            return SimplicityVerdict(False, t + 1, n.generators, n.order)
    return SimplicityVerdict(True, trials)


@dataclass
class RecognitionVerdict:
    family: str
    order_matched: bool
    simplicity: dict
    spectrum: dict
    overall: str

    @property
    def accepted(self) -> bool:
        return self.overall == "accepted"

    def as_dict(self) -> dict:
        return {"family": self.family, "order_matched": self.order_matched,
                "simplicity": self.simplicity, "spectrum": self.spectrum, "overall": self.overall}


def recognize_alternating(chain: StabilizerChain, n: int, *, trials: int = DEFAULT_TRIALS,
                          rng=0) -> RecognitionVerdict:
    """Decide whether the group is isomorphic to A_n (n >= 5)."""
    if n < 5:
        raise ValueError("alternating recognition needs n >= 5")
    target = math.factorial(n) // 2
    family = f"A{n}"
    spectrum = {"required": n == 8, "passed": None, "mode": None}
    if chain.order != target:
        return RecognitionVerdict(family, False, {"passed": None, "trials": 0}, spectrum, "rejected")
    simp = is_simple_mc(chain, trials, rng)
    if not simp.passed:
        return RecognitionVerdict(family, True, simp.as_dict(), spectrum, "rejected")
    overall = "accepted"
    if n == 8:
        spec = order_spectrum(chain, "exhaustive")
        spectrum.update(passed=15 in spec, mode="exhaustive", orders=sorted(spec))
        if not spectrum["passed"]:
            overall = "rejected"
    return RecognitionVerdict(family, True, simp.as_dict(), spectrum, overall)


def is_regular(chain: StabilizerChain) -> bool:
    """Transitive with order equal to the degree."""
    return chain.order == chain.degree and is_transitive(chain)


@dataclass
class SearchResult:
    found: bool
    h_gens: list[Permutation] | None
    seed: int
    attempt: int | None
    transcript: list[dict]
    verdict: FactorizationVerdict | None = None

    def as_dict(self) -> dict:
        return {
            "found": self.found,
            "seed": self.seed,
            "attempt": self.attempt,
            "h_gens": None if self.h_gens is None else [str(h) for h in self.h_gens],
            "attempts_made": len(self.transcript),
            "verdict": None if self.verdict is None else self.verdict.as_dict(),
        }


def _power_to(a: np.ndarray, k: int) -> np.ndarray | None:
    """A power of ``a`` of order exactly ``k``, if ``k`` divides the order of ``a``."""
    o = array_order(a)
    if o % k:
        return None
    return Permutation._wrap(a) ** (o // k) if o != k else Permutation._wrap(a)


def search_factor_subgroup(g, k_gens, n: int, attempts: int, rng_state: int = 0, *,
                           orders: Sequence[int] | None = None,
                           within=None,
                           trials: int = DEFAULT_TRIALS) -> SearchResult:
    """Random search for H ≅ A_n with G = HK.

    Attempt ``i`` draws from ``numpy.random.default_rng([rng_state, i])``,
    so any attempt replays on its own.  ``orders`` optionally asks for a pair
    of generators of those orders (random elements are powered down).
    ``within`` draws the pairs from a subgroup of G instead of G itself.
    Cheap filters reject a pair before any chain is built: the orders of
    ``a``, ``b``, ``ab`` and ``ab^2`` must occur in A_n.
    """
    if n < 5:
        raise ValueError("n must be at least 5")
    gc = _chain_of(g)
    target = math.factorial(n) // 2
    transcript: list[dict] = []
    if gc.order % target:
        transcript.append({"attempt": None, "stage": "lagrange"})
        return SearchResult(False, None, rng_state, None, transcript)
    k_chain = subgroup_chain(gc, k_gens)
    if target * k_chain.order < gc.order:
        transcript.append({"attempt": None, "stage": "too-small"})
        return SearchResult(False, None, rng_state, None, transcript)
    spec = alternating_spectrum(n)
    source = gc if within is None else _chain_of(within)
    for i in range(attempts):
        rng = np.random.default_rng([rng_state, i])
        pair = [source.random_array(rng), source.random_array(rng)]
        if orders is not None:
            pair = [_power_to(x, k) for x, k in zip(pair, orders)]
            if any(x is None for x in pair):
                transcript.append({"attempt": i, "stage": "orders"})
                continue
            pair = [x.images for x in pair]
        a, b = pair
        ab = b[a]
        if any(array_order(w) not in spec for w in (a, b, ab, b[ab])):
            transcript.append({"attempt": i, "stage": "word-orders"})
            continue
        try:
            h_chain = build_chain([a, b], gc.degree, order_limit=target, seed=i)
        except OrderLimitExceeded:
            transcript.append({"attempt": i, "stage": "order", "order": ">limit"})
            continue
        if h_chain.order != target:
            transcript.append({"attempt": i, "stage": "order", "order": str(h_chain.order)})
            continue
        rec = recognize_alternating(h_chain, n, trials=trials, rng=i)
        if not rec.accepted:
            transcript.append({"attempt": i, "stage": "recognition"})
            continue
        hs = [Permutation._wrap(a), Permutation._wrap(b)]
        verdict = verify_factorization(gc, hs, None, h_chain=h_chain, k_chain=k_chain)
        if not verdict.holds:
            transcript.append({"attempt": i, "stage": "factorization",
                               "orbit": str(verdict.orbit_size)})
            continue
        transcript.append({"attempt": i, "stage": "found"})
        return SearchResult(True, hs, rng_state, i, transcript, verdict)
    return SearchResult(False, None, rng_state, None, transcript)


@dataclass
class ExhaustiveReport:
    """Outcome of the exhaustive A_n search in a small group."""

    group_order: int
    candidates_n: list[int]
    pairs_examined: int
    a5_found: bool
    transitive_found: list[int]

    @property
    def none_found(self) -> bool:
        return not self.transitive_found


def exhaustive_alternating_search(g, n_max: int | None = None) -> ExhaustiveReport:
    """Prove that G has no transitive subgroup isomorphic to A_n, n >= 5.

    Only n with n!/2 dividing |G| can occur.  Any such subgroup contains an
    A5, which is generated by an involution and an element of order 3 whose
    product has order 5; so when no such pair generates a group of order 60
    there is no A_n at all.  If an A5 turns up, n = 5 is settled directly by
    testing transitivity; larger n are reported as unresolved candidates.
    """
    gc = _chain_of(g)
    if gc.order > SPECTRUM_CAP:
        raise ChainError("exhaustive search refused above the spectrum cap")
    top = n_max if n_max is not None else gc.degree
    cands = [n for n in range(5, max(top, 4) + 1) if gc.order % (math.factorial(n) // 2) == 0]
    if not cands:
        return ExhaustiveReport(gc.order, [], 0, False, [])
    elems = gc.elements()
    orders = _block_orders(elems)
    invs, threes = elems[orders == 2], elems[orders == 3]
    examined = 0
    transitive: list[int] = []
    a5 = False
    seen_groups: set[bytes] = set()
    for a in invs:
        for b in threes:
            examined += 1
            if array_order(b[a]) != 5:
                continue
            h = build_chain([a, b], gc.degree, order_limit=60)
            if h.order != 60:
                continue
            a5 = True
            key = np.unique(h.elements(), axis=0).tobytes()
            if key in seen_groups:
                continue
            seen_groups.add(key)
            if 5 in cands and is_transitive(h):
                transitive.append(5)
    if a5 and any(n > 5 for n in cands):
        raise ChainError("A5 subgroups present; larger alternating subgroups need a deeper search")
    return ExhaustiveReport(gc.order, cands, examined, a5, sorted(set(transitive)))
