"""Helpers for deriving the bundled group and case assets.

Everything here runs offline; the package only ever reads the JSON it
writes, and re-validates it on load.
"""
from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from factorforge.chain import OrderLimitExceeded, StabilizerChain, _inv, build_chain
from factorforge.gf import MatrixOverField, field_make, matrix_group_to_permutations
from factorforge.perm import Permutation, array_order, format_cycles

ROOT = Path(__file__).resolve().parents[1] / "src" / "factorforge" / "data"
GROUPS = ROOT / "groups"
CASES = ROOT / "cases"


def cycles_of(a: np.ndarray) -> str:
    return format_cycles(Permutation._wrap(np.asarray(a)))


def write_perm_group(name: str, gens: Sequence[np.ndarray], order: int, provenance: str,
                     claims: dict | None = None, kind: str = "perm-asset") -> dict:
    gens = [np.asarray(g) for g in gens]
    rec = {
        "name": name,
        "kind": kind,
        "degree": int(gens[0].shape[0]),
        "expected_order": str(order),
        "generators": [cycles_of(g) for g in gens],
        "provenance": provenance,
    }
    if claims:
        rec["claims"] = claims
    _dump(GROUPS / f"{name}.json", rec)
    return rec


def write_matrix_group(name: str, p: int, k: int, mode: str, mats: Sequence[np.ndarray],
                       order: int, degree: int, provenance: str,
                       claims: dict | None = None) -> dict:
    rec = {
        "name": name,
        "kind": "matrix-asset",
        "degree": degree,
        "expected_order": str(order),
        "generators": {"field": {"p": p, "k": k}, "mode": mode,
                       "matrices": [np.asarray(m).tolist() for m in mats]},
        "provenance": provenance,
    }
    if claims:
        rec["claims"] = claims
    _dump(GROUPS / f"{name}.json", rec)
    return rec


def write_cases(row: int, cases: list[dict]) -> None:
    _dump(CASES / f"table1_row{row:02d}.json", cases)


def _dump(path: Path, obj) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, indent=1) + "\n", encoding="utf-8")


def mats_to_perms(mats, p: int, k: int, mode: str) -> list[np.ndarray]:
    f = field_make(p, k)
    perms, _ = matrix_group_to_permutations([MatrixOverField(f, np.asarray(m)) for m in mats], mode)
    return [x.images for x in perms]


def chain_of(gens, degree=None, **kw) -> StabilizerChain:
    return build_chain(list(gens), degree, **kw)


def set_key(a: np.ndarray) -> bytes:
    return np.sort(a).astype(np.int32).tobytes()


def object_orbit(gens: Sequence[np.ndarray], obj, act: Callable, key: Callable,
                 limit: int = 10 ** 6) -> dict:
    """Orbit of ``obj`` under ``gens``; maps key -> (object, transversal array)."""
    d = gens[0].shape[0]
    ident = np.arange(d, dtype=gens[0].dtype)
    out = {key(obj): (obj, ident)}
    queue = [obj]
    while queue:
        nxt = []
        for o in queue:
            t = out[key(o)][1]
            for g in gens:
                y = act(o, g)
                ky = key(y)
                if ky not in out:
                    out[ky] = (y, g[t])
                    nxt.append(y)
                    if len(out) > limit:
                        raise RuntimeError("orbit too large")
        queue = nxt
    return out


def object_stabilizer(chain: StabilizerChain, obj, act: Callable, key: Callable,
                      seed: int = 0, gens=None) -> tuple[list[np.ndarray], int]:
    """Generators of the stabilizer of ``obj`` and the orbit length.

    The orbit is enumerated completely, so |G|/orbit is the exact stabilizer
    order; random Schreier generators are added until it is reached.
    """
    gens = list(gens if gens is not None else chain.generator_arrays())
    orb = object_orbit(gens, obj, act, key)
    target = chain.order // len(orb)
    rng = np.random.default_rng(seed)
    d = chain.degree
    found: list[np.ndarray] = []
    sub = build_chain([], d)
    while sub.order < target:
        r = chain.random_array(rng)
        y = act(obj, r)
        t = orb[key(y)][1]
        s = _inv(t)[r]
        if sub.contains_array(s):
            continue
        found.append(s)
        sub = build_chain(found, d, order_bound=target, verify=False)
    sub = build_chain(found, d, order_bound=target)
    assert sub.order == target
    return found, len(orb)


def set_stabilizer(chain: StabilizerChain, points, seed: int = 0):
    pts = np.asarray(sorted(points), dtype=np.int64)
    return object_stabilizer(chain, pts, lambda o, g: np.sort(g[o]), set_key, seed)


def reduce_gens(gens: Sequence[np.ndarray], order: int, seed: int = 0, count: int = 2,
                tries: int = 400) -> list[np.ndarray]:
    """A short generating set: random elements, ``count`` at a time, until they generate."""
    ch = build_chain(list(gens), order_bound=order)
    assert ch.order == order
    rng = np.random.default_rng(seed)
    for c in range(count, count + 4):
        for _ in range(tries):
            cand = [ch.random_array(rng) for _ in range(c)]
            try:
                sub = build_chain(cand, order_bound=order, order_limit=order)
            except OrderLimitExceeded:
                continue
            if sub.order == order:
                return cand
    return list(gens)


def search_subgroup(source: StabilizerChain, order: int, seed: int, attempts: int,
                    predicate: Callable | None = None, orders=None,
                    spectrum: frozenset | None = None):
    """Random pairs from ``source`` generating a group of the given order."""
    for i in range(attempts):
        rng = np.random.default_rng([seed, i])
        pair = [source.random_array(rng), source.random_array(rng)]
        if orders is not None:
            ok = []
            for x, k in zip(pair, orders):
                o = array_order(x)
                if o % k:
                    break
                ok.append((Permutation._wrap(x) ** (o // k)).images)
            if len(ok) < 2:
                continue
            pair = ok
        a, b = pair
        if spectrum is not None and any(array_order(w) not in spectrum
                                        for w in (a, b, b[a], b[b[a]])):
            continue
        try:
            h = build_chain(pair, order_limit=order, seed=i)
        except OrderLimitExceeded:
            continue
        if h.order != order:
            continue
        if predicate is not None and not predicate(h):
            continue
        return pair, h, i
    raise RuntimeError(f"no subgroup of order {order} found in {attempts} attempts")


def restrict(gens: Sequence[np.ndarray], points: Sequence[int]) -> list[np.ndarray]:
    pts = np.asarray(points, dtype=np.int64)
    relabel = np.full(gens[0].shape[0], -1, dtype=np.int64)
    relabel[pts] = np.arange(len(pts))
    out = []
    for g in gens:
        img = relabel[g[pts]]
        assert (img >= 0).all()
        out.append(img.astype(np.uint16))
    return out


def orbit_sizes_on(gens, obj, act, key) -> int:
    return len(object_orbit(list(gens), obj, act, key))


def factorial_half(n: int) -> int:
    return math.factorial(n) // 2


def inv_mod(m: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a square matrix over GF(p) by Gauss-Jordan elimination."""
    n = m.shape[0]
    a = np.concatenate([np.asarray(m, dtype=np.int64) % p, np.eye(n, dtype=np.int64)], axis=1)
    for c in range(n):
        r = c + int(np.flatnonzero(a[c:, c])[0])
        a[[c, r]] = a[[r, c]]
        a[c] = a[c] * pow(int(a[c, c]), -1, p) % p
        for i in range(n):
            if i != c and a[i, c]:
                a[i] = (a[i] - a[i, c] * a[c]) % p
    return a[:, n:]
