"""Base and strong generating sets (Schreier-Sims) and chain-derived queries.

Construction runs a randomized Schreier-Sims pass seeded deterministically
and then a deterministic Schreier generator check, so a finished chain is a
proof of the group order.  The check is skipped only when the caller passes
``order_bound``, a proven upper bound on the group order that the chain has
reached; a partial BSGS whose basic orbit lengths multiply to a true upper
bound is complete.

Transversals are stored explicitly (every Schreier tree has depth one).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

from .perm import Permutation, PermutationError, perm_dtype

__all__ = [
    "StabilizerChain",
    "ChainError",
    "OrderLimitExceeded",
    "build_chain",
    "orbit",
    "Orbit",
    "transitivity_degree",
    "minimal_blocks",
    "BlockVerdict",
    "random_element",
    "as_rng",
]

_RANDOM_QUIT = 24
_PR_SLOTS = 10
_PR_WARMUP = 40


class ChainError(ValueError):
    """Invalid input to chain construction or a chain query."""


class OrderLimitExceeded(Exception):
    """The group generated so far is already larger than the allowed limit."""

    def __init__(self, lower_bound: int, limit: int):
        super().__init__(f"group order is at least {lower_bound} > limit {limit}")
        self.lower_bound = lower_bound
        self.limit = limit


def as_rng(rng) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def _arrays(gens: Iterable, degree: int | None) -> tuple[list[np.ndarray], int]:
    arrays = []
    for g in gens:
        a = g.images if isinstance(g, Permutation) else np.asarray(g)
        if degree is None:
            degree = int(a.shape[0])
        elif a.shape[0] != degree:
            raise ChainError(f"degree mismatch: {a.shape[0]} vs {degree}")
        arrays.append(np.ascontiguousarray(a, dtype=perm_dtype(degree)))
    if degree is None:
        raise ChainError("degree is required when the generator list is empty")
    return arrays, degree


def _inv(a: np.ndarray) -> np.ndarray:
    out = np.empty_like(a)
    out[a] = np.arange(a.shape[0], dtype=a.dtype)
    return out


class _Level:
    __slots__ = ("point", "gens", "gens_inv", "pos", "orbit", "trans", "trans_inv",
                 "checked", "orbit_arr")

    def __init__(self, point: int, degree: int, ident: np.ndarray):
        self.point = point
        self.gens: list[np.ndarray] = []
        self.gens_inv: list[np.ndarray] = []
        self.pos = np.full(degree, -1, dtype=np.int64)
        self.pos[point] = 0
        self.orbit = [point]
        self.trans = [ident]
        self.trans_inv = [ident]
        self.checked: set[tuple[int, int]] = set()
        self.orbit_arr: np.ndarray | None = None

    def add_gen(self, g: np.ndarray, ginv: np.ndarray) -> None:
        self.gens.append(g)
        self.gens_inv.append(ginv)
        pos, orbit, trans, trans_inv = self.pos, self.orbit, self.trans, self.trans_inv
        gl = g.tolist() if len(orbit) > 64 else None
        # existing points under the new generator, new points under every generator
        queue = []
        for k in range(len(orbit)):
            p = orbit[k]
            q = gl[p] if gl is not None else int(g[p])
            if pos[q] < 0:
                pos[q] = len(orbit)
                orbit.append(q)
                trans.append(g[trans[k]])
                trans_inv.append(trans_inv[k][ginv])
                queue.append(len(orbit) - 1)
        gens = self.gens
        gens_inv = self.gens_inv
        while queue:
            k = queue.pop()
            p = orbit[k]
            for s, h in enumerate(gens):
                q = int(h[p])
                if pos[q] < 0:
                    pos[q] = len(orbit)
                    orbit.append(q)
                    trans.append(h[trans[k]])
                    trans_inv.append(trans_inv[k][gens_inv[s]])
                    queue.append(len(orbit) - 1)


def _sift(levels: list[_Level], g: np.ndarray, start: int = 0) -> tuple[np.ndarray, int]:
    for i in range(start, len(levels)):
        lev = levels[i]
        k = lev.pos[g[lev.point]]
        if k < 0:
            return g, i
        if k:
            g = lev.trans_inv[k][g]
    return g, len(levels)


class _Builder:
    def __init__(self, degree: int, base_prefix: Sequence[int]):
        self.degree = degree
        self.ident = np.arange(degree, dtype=perm_dtype(degree))
        self.ident.setflags(write=False)
        self.levels: list[_Level] = []
        self.strong: list[np.ndarray] = []
        for b in base_prefix:
            b = int(b)
            if not 0 <= b < degree:
                raise ChainError(f"base point {b} out of range")
            if any(lev.point == b for lev in self.levels):
                raise ChainError(f"base point {b} repeated")
            self.levels.append(_Level(b, degree, self.ident))

    def order(self) -> int:
        return math.prod(len(lev.orbit) for lev in self.levels)

    def is_identity(self, g: np.ndarray) -> bool:
        return bool(np.array_equal(g, self.ident))

    def add(self, g: np.ndarray, j: int) -> None:
        if j == len(self.levels):
            moved = np.flatnonzero(g != self.ident)
            used = {lev.point for lev in self.levels}
            b = next(int(x) for x in moved if int(x) not in used)
            self.levels.append(_Level(b, self.degree, self.ident))
        g = np.ascontiguousarray(g)
        ginv = _inv(g)
        self.strong.append(g)
        for i in range(j + 1):
            self.levels[i].add_gen(g, ginv)

    def sift_add(self, g: np.ndarray) -> bool:
        res, j = _sift(self.levels, g)
        if j == len(self.levels) and self.is_identity(res):
            return False
        self.add(res, j)
        return True


def build_chain(gens: Iterable, degree: int | None = None, *,
                base_prefix: Sequence[int] = (),
                order_bound: int | None = None,
                order_limit: int | None = None,
                seed: int = 0,
                verify: bool = True) -> "StabilizerChain":
    """Build a verified stabilizer chain for the group generated by ``gens``.

    ``base_prefix`` fixes the first base points (levels may have trivial
    orbits).  Further base points are the smallest moved points of the
    generators that need them.

    ``order_bound`` is a proven upper bound on the group order.  Reaching it
    certifies the chain without the Schreier generator check; exceeding it
    raises ``ChainError``.  ``order_limit`` aborts construction with
    ``OrderLimitExceeded`` as soon as the order is known to exceed it.
    ``verify=False`` skips the Schreier generator check; the chain may then
    describe a proper subgroup and is only good as a one-sided filter.
    """
    gen_arrays, degree = _arrays(gens, degree)
    b = _Builder(degree, base_prefix)
    gen_arrays = [g for g in gen_arrays if not b.is_identity(g)]

    def settle() -> bool:
        o = b.order()
        if order_limit is not None and o > order_limit:
            raise OrderLimitExceeded(o, order_limit)
        if order_bound is not None:
            if o > order_bound:
                raise ChainError(f"order {o} exceeds the stated bound {order_bound}")
            return o == order_bound
        return False

    done = settle()
    for g in gen_arrays:
        if done:
            break
        if b.sift_add(g):
            done = settle()

    if not done and gen_arrays:
        rng = np.random.default_rng(seed)
        slots = [gen_arrays[i % len(gen_arrays)] for i in range(max(_PR_SLOTS, len(gen_arrays)))]
        acc = b.ident

        def next_random() -> np.ndarray:
            nonlocal acc
            i, j = rng.choice(len(slots), size=2, replace=False)
            sj = slots[j] if rng.random() < 0.5 else _inv(slots[j])
            if rng.random() < 0.5:
                slots[i] = sj[slots[i]]
            else:
                slots[i] = slots[i][sj]
            acc = slots[i][acc]
            return acc

        for _ in range(_PR_WARMUP):
            next_random()
        quiet = 0
        while quiet < _RANDOM_QUIT and not done:
            if b.sift_add(next_random()):
                quiet = 0
                done = settle()
            else:
                quiet += 1

    if verify and not done and gen_arrays:
        done = _verify(b, settle)

    return StabilizerChain._from_builder(b, gen_arrays, certified_by_bound=order_bound is not None
                                         and b.order() == order_bound)


def _verify(b: _Builder, settle) -> bool:
    """Deterministic Schreier generator check; extends the chain as needed."""
    levels = b.levels
    i = len(levels) - 1
    while i >= 0:
        lev = levels[i]
        restart = None
        k = 0
        while k < len(lev.orbit) and restart is None:
            p = lev.orbit[k]
            u = lev.trans[k]
            for s in range(len(lev.gens)):
                if (k, s) in lev.checked:
                    continue
                lev.checked.add((k, s))
                g = lev.gens[s]
                q = int(g[p])
                h = lev.trans_inv[int(lev.pos[q])][g[u]]
                res, j = _sift(levels, h, i + 1)
                if j == len(levels) and b.is_identity(res):
                    continue
                b.add(res, j)
                if settle():
                    return True
                restart = j
                break
            k += 1
        if restart is None:
            i -= 1
        else:
            i = restart
    return False


class StabilizerChain:
    """Immutable base and strong generating set."""

    def __init__(self):
        raise TypeError("use build_chain()")

    @classmethod
    def _from_builder(cls, b: _Builder, gens: list[np.ndarray], certified_by_bound: bool):
        self = object.__new__(cls)
        self.degree = b.degree
        self._ident = b.ident
        for lev in b.levels:
            lev.orbit_arr = np.asarray(lev.orbit, dtype=np.int64)
            lev.orbit_arr.setflags(write=False)
            lev.checked = set()
        self._levels = tuple(b.levels)
        self._gens = tuple(gens)
        self._strong = tuple(b.strong)
        self.certified_by_bound = certified_by_bound
        self._order = b.order()
        return self

    @classmethod
    def _from_levels(cls, degree, ident, levels, gens):
        self = object.__new__(cls)
        self.degree = degree
        self._ident = ident
        self._levels = tuple(levels)
        self._gens = tuple(gens)
        strong: list[np.ndarray] = []
        seen = set()
        for lev in levels:
            for g in lev.gens:
                if id(g) not in seen:
                    seen.add(id(g))
                    strong.append(g)
        self._strong = tuple(strong)
        self.certified_by_bound = False
        self._order = math.prod(len(lev.orbit) for lev in levels)
        return self

    # ----- basic data -------------------------------------------------
    @property
    def base(self) -> tuple[int, ...]:
        return tuple(lev.point for lev in self._levels)

    @property
    def levels(self) -> tuple:
        return self._levels

    @property
    def order(self) -> int:
        """Exact group order (product of basic orbit lengths)."""
        return self._order

    def orbit_sizes(self) -> tuple[int, ...]:
        return tuple(len(lev.orbit) for lev in self._levels)

    @property
    def generators(self) -> list[Permutation]:
        return [Permutation._wrap(g) for g in self._gens]

    @property
    def strong_generators(self) -> list[Permutation]:
        return [Permutation._wrap(g) for g in self._strong]

    def generator_arrays(self) -> tuple[np.ndarray, ...]:
        return self._gens if self._gens else self._strong

    def identity(self) -> Permutation:
        return Permutation._wrap(self._ident)

    def is_trivial(self) -> bool:
        return self._order == 1

    # ----- membership --------------------------------------------------
    def sift(self, p) -> tuple[bool, Permutation]:
        a = self._array(p)
        res, j = _sift(list(self._levels), a)
        ok = j == len(self._levels) and bool(np.array_equal(res, self._ident))
        return ok, Permutation._wrap(res)

    def contains(self, p) -> bool:
        return self.sift(p)[0]

    __contains__ = contains

    def contains_array(self, a: np.ndarray) -> bool:
        res, j = _sift(list(self._levels), a)
        return j == len(self._levels) and bool(np.array_equal(res, self._ident))

    def _array(self, p) -> np.ndarray:
        a = p.images if isinstance(p, Permutation) else np.asarray(p)
        if a.shape[0] != self.degree:
            raise PermutationError(f"degree mismatch: {a.shape[0]} vs {self.degree}")
        return a

    # ----- subgroups ---------------------------------------------------
    def stabilizer(self, depth: int) -> "StabilizerChain":
        """Chain of the pointwise stabilizer of the first ``depth`` base points."""
        if not 0 <= depth <= len(self._levels):
            raise ChainError("depth out of range")
        levels = self._levels[depth:]
        gens = list(levels[0].gens) if levels else []
        return StabilizerChain._from_levels(self.degree, self._ident, levels, gens)

    def stabilizer_generators(self, depth: int) -> list[Permutation]:
        if depth >= len(self._levels):
            return []
        return [Permutation._wrap(g) for g in self._levels[depth].gens]

    # ----- elements ----------------------------------------------------
    def random_array(self, rng) -> np.ndarray:
        rng = as_rng(rng)
        a = self._ident
        for lev in reversed(self._levels):
            k = int(rng.integers(len(lev.orbit)))
            if k:
                a = lev.trans[k][a]
        return a

    def random_element(self, rng) -> Permutation:
        return Permutation._wrap(self.random_array(rng))

    def iter_element_blocks(self, block: int = 4096) -> Iterator[np.ndarray]:
        """Yield every group element exactly once, in 2-d blocks of image rows."""
        levels = [lev for lev in self._levels if len(lev.orbit) > 1]
        yield from _blocks(levels, self._ident[None, :], block)

    def elements(self) -> np.ndarray:
        if self._order > 2_000_000:
            raise ChainError("refusing to list more than 2e6 elements")
        return np.concatenate(list(self.iter_element_blocks(1 << 16)), axis=0)

    def __repr__(self) -> str:
        return f"StabilizerChain(degree={self.degree}, order={self._order}, base={list(self.base)})"


def _blocks(levels: list[_Level], prefix: np.ndarray, block: int) -> Iterator[np.ndarray]:
    # elements are t_k ... t_0 applied deepest first; prefix holds partial products
    if not levels:
        yield prefix
        return
    top, *inner = levels
    tr = np.stack(top.trans)
    for chunk in _blocks(inner, prefix, max(1, block // len(tr))):
        out = tr[:, chunk].reshape(-1, chunk.shape[1])
        for s in range(0, out.shape[0], block):
            yield out[s:s + block]


def random_element(chain: StabilizerChain, rng) -> Permutation:
    """Uniform random element: one uniform transversal pick per level."""
    return chain.random_element(rng)


# ----------------------------------------------------------------------
# orbits
# ----------------------------------------------------------------------
@dataclass
class Orbit:
    """An orbit together with its Schreier tree."""

    root: int
    points: list[int]
    parent: dict[int, tuple[int, int]] = field(repr=False)
    generators: list[Permutation] = field(repr=False)

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, p: int) -> bool:
        return p in self.parent or p == self.root

    def word(self, point: int) -> list[int]:
        """Generator indices whose product maps the root to ``point``."""
        if point not in self:
            raise ChainError(f"point {point} not in orbit")
        w = []
        while point != self.root:
            prev, s = self.parent[point]
            w.append(s)
            point = prev
        return w[::-1]

    def transversal(self, point: int) -> Permutation:
        d = self.generators[0].degree if self.generators else 1
        a = np.arange(d, dtype=perm_dtype(d))
        for s in self.word(point):
            a = self.generators[s].images[a]
        return Permutation._wrap(a)


def orbit(gens: Sequence[Permutation], point: int, degree: int | None = None) -> Orbit:
    """Breadth-first orbit of ``point`` with a Schreier tree."""
    gens = list(gens)
    if degree is None:
        degree = gens[0].degree if gens else point + 1
    if not 0 <= point < degree:
        raise ChainError(f"point {point} out of range")
    lists = [g.images.tolist() for g in gens]
    parent: dict[int, tuple[int, int]] = {}
    pts = [point]
    seen = {point}
    for p in pts:
        for s, g in enumerate(lists):
            q = g[p]
            if q not in seen:
                seen.add(q)
                parent[q] = (p, s)
                pts.append(q)
    return Orbit(point, pts, parent, gens)


def orbits(gens: Sequence[Permutation], degree: int) -> list[list[int]]:
    lists = [g.images.tolist() for g in gens]
    label = [-1] * degree
    out = []
    for start in range(degree):
        if label[start] >= 0:
            continue
        label[start] = len(out)
        cur = [start]
        for p in cur:
            for g in lists:
                q = g[p]
                if label[q] < 0:
                    label[q] = len(out)
                    cur.append(q)
        out.append(cur)
    return out


# ----------------------------------------------------------------------
# multiple transitivity and homogeneity
# ----------------------------------------------------------------------
def transitivity_degree(chain: StabilizerChain, mode: str = "transitive", max_k: int = 8) -> int:
    """Largest k <= max_k with the group k-transitive (or k-homogeneous)."""
    d = chain.degree
    max_k = min(max_k, d)
    if mode not in ("transitive", "homogeneous"):
        raise ChainError(f"unknown mode {mode!r}")
    gens = chain.generator_arrays()
    if max_k < 1:
        return 0
    full = build_chain(gens, d, base_prefix=range(max_k), order_bound=chain.order)
    k = 0
    for i, lev in enumerate(full.levels[:max_k]):
        if len(lev.orbit) != d - i:
            break
        k = i + 1
    if mode == "transitive" or k == 0:
        return k
    perms = [Permutation._wrap(g) for g in gens]
    for kk in range(k + 1, max_k + 1):
        if not _is_homogeneous(perms, chain.order, d, kk):
            break
        k = kk
    return k


def _is_homogeneous(gens: list[Permutation], order: int, d: int, k: int) -> bool:
    target = math.comb(d, k)
    if order < target or order % target:
        return False
    lists = [g.images.tolist() for g in gens]
    start = tuple(range(k))
    seen = {start}
    queue = [start]
    for s in queue:
        for g in lists:
            t = tuple(sorted(g[x] for x in s))
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return len(seen) == target


def ordered_tuple_orbits(gens: Sequence[Permutation], degree: int, k: int) -> int:
    """Number of orbits on ordered k-tuples of distinct points (small degrees)."""
    from itertools import permutations

    lists = [g.images.tolist() for g in gens]
    seen: set[tuple[int, ...]] = set()
    count = 0
    for t in permutations(range(degree), k):
        if t in seen:
            continue
        count += 1
        seen.add(t)
        queue = [t]
        for s in queue:
            for g in lists:
                u = tuple(g[x] for x in s)
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
    return count


# ----------------------------------------------------------------------
# blocks
# ----------------------------------------------------------------------
@dataclass
class BlockVerdict:
    primitive: bool
    block_size: int | None = None
    block_count: int | None = None
    blocks: list[list[int]] | None = None


def _minimal_block(lists: list[list[int]], d: int, a: int, b: int) -> list[int]:
    """Block labels of the finest system in which ``a`` and ``b`` share a block."""
    parent = list(range(d))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    queue = [(a, b)]
    parent[find(b)] = find(a)
    while queue:
        x, y = queue.pop()
        for g in lists:
            gx, gy = find(g[x]), find(g[y])
            if gx != gy:
                parent[gy] = gx
                queue.append((gx, gy))
    return [find(x) for x in range(d)]


def minimal_blocks(chain: StabilizerChain) -> BlockVerdict:
    """Primitivity test; returns a minimal nontrivial block system if imprimitive."""
    d = chain.degree
    gens = [Permutation._wrap(g) for g in chain.generator_arrays()]
    if d == 1:
        return BlockVerdict(True)
    if len(orbit(gens, 0, d)) != d:
        raise ChainError("minimal_blocks needs a transitive group")
    stab = build_chain(chain.generator_arrays(), d, base_prefix=[0], order_bound=chain.order)
    stab_gens = [Permutation._wrap(g) for g in stab.levels[1].gens] if len(stab.levels) > 1 else []
    reps = [o[0] for o in orbits(stab_gens, d) if o[0] != 0] if stab_gens else list(range(1, d))
    lists = [g.images.tolist() for g in gens]
    best = None
    for r in reps:
        labels = _minimal_block(lists, d, 0, r)
        size = labels.count(labels[0])
        if size < d and (best is None or size < best[0]):
            best = (size, labels)
            if size == 2:
                break
    if best is None:
        return BlockVerdict(True)
    size, labels = best
    groups: dict[int, list[int]] = {}
    for x, lab in enumerate(labels):
        groups.setdefault(lab, []).append(x)
    blocks = sorted(groups.values())
    return BlockVerdict(False, size, d // size, blocks)


def is_transitive(chain: StabilizerChain) -> bool:
    gens = [Permutation._wrap(g) for g in chain.generator_arrays()]
    if not gens:
        return chain.degree == 1
    return len(orbit(gens, 0, chain.degree)) == chain.degree
