"""Group records, the bundled assets, and constructors for the standard families.

A record is untrusted input: loading builds a verified stabilizer chain and
refuses the record unless the chain order equals ``expected_order``.
Optional ``claims`` (simplicity, isomorphism with A_n) are re-checked too.
"""
from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .chain import ChainError, OrderLimitExceeded, StabilizerChain, build_chain, as_rng
from .gf import FieldError, MatrixOverField, field_make, matrix_group_to_permutations
from .perm import Permutation, PermutationError, format_cycles, parse_cycles

__all__ = [
    "AssetError",
    "GroupSpecRecord",
    "GroupHandle",
    "FactorizationCase",
    "data_dir",
    "record_from_dict",
    "load_group_record",
    "load_group",
    "load_cases",
    "case_path",
    "handle_from_generators",
    "build_natural",
    "build_psl2",
    "build_holomorph_diagonal",
    "build_product_action_wreath",
    "conjugation_automorphisms",
    "PSL2_FIELDS",
]

KINDS = ("natural", "psl2", "matrix-asset", "perm-asset", "holomorph-diagonal",
         "wreath-product-action")
PSL2_FIELDS = (4, 9, 25)
HOLOMORPH_CAP = 500
WREATH_CAP = 12


class AssetError(ValueError):
    """A record or case file that cannot be parsed, resolved, or validated."""


@dataclass
class GroupSpecRecord:
    name: str
    kind: str
    degree: int
    expected_order: int
    generators: Any
    provenance: str = ""
    claims: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "kind": self.kind,
            "degree": self.degree,
            "expected_order": str(self.expected_order),
            "generators": self.generators,
            "provenance": self.provenance,
        }
        if self.claims:
            out["claims"] = self.claims
        return out


@dataclass
class GroupHandle:
    """A named group: its record, generators, and verified chain."""

    record: GroupSpecRecord
    generators: list[Permutation]
    chain: StabilizerChain
    subgroups: dict[str, "GroupHandle"] = field(default_factory=dict)

    @property
    def name(self) -> str:
        return self.record.name

    @property
    def order(self) -> int:
        return self.chain.order

    @property
    def degree(self) -> int:
        return self.chain.degree

    def __repr__(self) -> str:
        return f"GroupHandle({self.name!r}, degree={self.degree}, order={self.order})"


def data_dir() -> Path:
    """Asset root: ``$FACTORFORGE_DATA`` if set, else the bundled data."""
    env = os.environ.get("FACTORFORGE_DATA")
    if env:
        return Path(env)
    return Path(str(resources.files("factorforge") / "data"))


def record_from_dict(d: dict) -> GroupSpecRecord:
    try:
        kind = d["kind"]
        if kind not in KINDS:
            raise AssetError(f"unknown construction kind {kind!r}")
        order = d["expected_order"]
        if not isinstance(order, str) or not order.isdigit():
            raise AssetError("expected_order must be a decimal string")
        return GroupSpecRecord(str(d["name"]), kind, int(d["degree"]), int(order),
                               d["generators"], str(d.get("provenance", "")),
                               dict(d.get("claims", {})))
    except KeyError as e:
        raise AssetError(f"record is missing field {e.args[0]!r}") from None
    except (TypeError, ValueError) as e:
        if isinstance(e, AssetError):
            raise
        raise AssetError(f"malformed record: {e}") from None


def _perms_from_record(rec: GroupSpecRecord) -> list[Permutation]:
    g = rec.generators
    if isinstance(g, list):
        try:
            perms = [parse_cycles(s, rec.degree) for s in g]
        except (PermutationError, TypeError) as e:
            raise AssetError(f"{rec.name}: {e}") from None
        return perms
    if isinstance(g, dict):
        try:
            fld = field_make(int(g["field"]["p"]), int(g["field"]["k"]))
            mode = g["mode"]
            mats = [MatrixOverField(fld, np.asarray(m, dtype=np.int64)) for m in g["matrices"]]
            perms, report = matrix_group_to_permutations(mats, mode)
        except (FieldError, KeyError, TypeError, ValueError) as e:
            raise AssetError(f"{rec.name}: bad matrix payload: {e}") from None
        if report.domain_size != rec.degree:
            raise AssetError(f"{rec.name}: matrix action has degree {report.domain_size}, "
                             f"record says {rec.degree}")
        return perms
    raise AssetError(f"{rec.name}: generators must be a list of cycles or a matrix payload")


def handle_from_record(rec: GroupSpecRecord, *, check_claims: bool = True) -> GroupHandle:
    """Build and validate a handle.  Raises ``AssetError`` on any failed gate."""
    perms = _perms_from_record(rec)
    try:
        chain = build_chain(perms, rec.degree, order_limit=rec.expected_order)
    except OrderLimitExceeded as e:
        raise AssetError(f"{rec.name}: order gate failed: generated order exceeds "
                         f"{rec.expected_order} (at least {e.lower_bound})") from None
    except ChainError as e:
        raise AssetError(f"{rec.name}: {e}") from None
    if chain.order != rec.expected_order:
        raise AssetError(f"{rec.name}: order gate failed: expected {rec.expected_order}, "
                         f"generated {chain.order}")
    h = GroupHandle(rec, perms, chain)
    if check_claims and rec.claims:
        check_record_claims(h)
    return h


def check_record_claims(h: GroupHandle, trials: int | None = None) -> None:
    from .recognize import is_simple_mc, recognize_alternating

    claims = h.record.claims
    n = claims.get("alternating")
    if n is not None:
        verdict = recognize_alternating(h.chain, int(n), **({"trials": trials} if trials else {}))
        if not verdict.accepted:
            raise AssetError(f"{h.name}: not recognized as A{n} ({verdict.overall})")
    elif claims.get("simple"):
        verdict = is_simple_mc(h.chain, trials or 8)
        if not verdict.passed:
            raise AssetError(f"{h.name}: claimed simple, found a normal subgroup of order "
                             f"{verdict.witness_order}")


def load_group_record(file_path, *, check_claims: bool = True) -> GroupHandle:
    path = Path(file_path)
    try:
        d = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise AssetError(f"missing asset {path}") from None
    except (OSError, json.JSONDecodeError) as e:
        raise AssetError(f"cannot read {path}: {e}") from None
    if not isinstance(d, dict):
        raise AssetError(f"{path}: a group record must be a JSON object")
    return handle_from_record(record_from_dict(d), check_claims=check_claims)


def load_group(name: str, *, check_claims: bool = True) -> GroupHandle:
    """Load ``data/groups/<name>.json`` from the asset root (cached per root)."""
    return _load_cached(str(data_dir()), name, check_claims)


@lru_cache(maxsize=128)
def _load_cached(root: str, name: str, check_claims: bool) -> GroupHandle:
    if not name or "/" in name or name.startswith("."):
        raise AssetError(f"bad asset name {name!r}")
    return load_group_record(Path(root) / "groups" / f"{name}.json", check_claims=check_claims)


# ----- factorization cases ------------------------------------------------

@dataclass
class FactorizationCase:
    row: int | None
    L: str
    H: Any
    K: str
    expect_holds: bool
    expected_intersection_order: int | None
    n: int | None = None
    label: str = ""

    @property
    def h_is_search(self) -> bool:
        return isinstance(self.H, dict)

    def title(self) -> str:
        h = self.H if isinstance(self.H, str) else "search"
        return self.label or f"{self.L} = {h} * {self.K}"

    def to_dict(self) -> dict:
        out = {"row": self.row, "L": self.L, "H": self.H, "K": self.K,
               "expect_holds": self.expect_holds,
               "expected_intersection_order": None if self.expected_intersection_order is None
               else str(self.expected_intersection_order)}
        if self.n is not None:
            out["n"] = self.n
        if self.label:
            out["label"] = self.label
        return out


def _case_from_dict(d: dict) -> FactorizationCase:
    try:
        h = d["H"]
        if isinstance(h, dict):
            s = h.get("search")
            if not isinstance(s, dict) or not {"seed", "attempts", "n"} <= set(s):
                raise AssetError("search recipe needs seed, attempts and n")
        elif not isinstance(h, str):
            raise AssetError("H must be an asset name or a search recipe")
        inter = d.get("expected_intersection_order")
        if inter is not None and not (isinstance(inter, str) and inter.isdigit()):
            raise AssetError("expected_intersection_order must be a decimal string or null")
        row = d.get("row")
        return FactorizationCase(None if row is None else int(row), str(d["L"]), h, str(d["K"]),
                                 bool(d["expect_holds"]), None if inter is None else int(inter),
                                 d.get("n"), str(d.get("label", "")))
    except KeyError as e:
        raise AssetError(f"case is missing field {e.args[0]!r}") from None


def load_cases(file_path) -> list[FactorizationCase]:
    """A case file holds one case object or a list of them."""
    path = Path(file_path)
    try:
        d = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise AssetError(f"missing case file {path}") from None
    except (OSError, json.JSONDecodeError) as e:
        raise AssetError(f"cannot read {path}: {e}") from None
    items = d if isinstance(d, list) else [d]
    if not all(isinstance(x, dict) for x in items):
        raise AssetError(f"{path}: cases must be JSON objects")
    return [_case_from_dict(x) for x in items]


def case_path(row: int) -> Path:
    return data_dir() / "cases" / f"table1_row{row:02d}.json"


# ----- constructors -------------------------------------------------------

def handle_from_generators(name: str, kind: str, gens: Sequence[Permutation], degree: int,
                           expected_order: int, provenance: str = "",
                           claims: dict | None = None) -> GroupHandle:
    rec = GroupSpecRecord(name, kind, degree, expected_order, [format_cycles(g) for g in gens],
                          provenance, dict(claims or {}))
    chain = build_chain(gens, degree, order_limit=expected_order)
    if chain.order != expected_order:
        raise AssetError(f"{name}: order gate failed: expected {expected_order}, got {chain.order}")
    return GroupHandle(rec, list(gens), chain)


def build_natural(n: int, variant: str = "alternating") -> GroupHandle:
    """A_n or S_n on n points."""
    if n < 1:
        raise ValueError("n must be positive")
    cycle = "(" + ",".join(str(i) for i in range(1, n + 1)) + ")" if n > 1 else "()"
    if variant == "symmetric":
        texts = ["(1,2)", cycle] if n > 1 else ["()"]
        order = math.factorial(n)
        name = f"S{n}"
    elif variant == "alternating":
        if n < 3:
            texts = ["()"]
        elif n % 2:
            texts = ["(1,2,3)", cycle]
        else:
            texts = ["(1,2,3)", "(" + ",".join(str(i) for i in range(2, n + 1)) + ")"]
        order = max(math.factorial(n) // 2, 1)
        name = f"A{n}"
    else:
        raise ValueError(f"unknown variant {variant!r}")
    gens = [parse_cycles(t, n) for t in texts]
    return handle_from_generators(name, "natural", gens, n, order, "standard generators")


def build_psl2(q: int) -> GroupHandle:
    """PSL2(q) on the projective line GF(q) ∪ {∞}, with ∞ as the last point."""
    factors = _prime_factors(q) if q > 1 else []
    if len(factors) != 1 or (q != factors[0] and q not in PSL2_FIELDS):
        raise ValueError(f"unsupported q = {q}; expected a prime or one of {PSL2_FIELDS}")
    p = factors[0]
    k = round(math.log(q, p))
    if k == 1 and p > 5:
        add = lambda a, b: (a + b) % p  # noqa: E731
        mul = lambda a, b: (a * b) % p  # noqa: E731
        inv = lambda a: pow(a, -1, p)  # noqa: E731
        neg = lambda a: (-a) % p  # noqa: E731
        zeta = next(z for z in range(2, p) if all(pow(z, (p - 1) // r, p) != 1
                                                  for r in _prime_factors(p - 1)))
    else:
        f = field_make(p, k)
        add = lambda a, b: int(f.add[a, b])  # noqa: E731
        mul = lambda a, b: int(f.mul[a, b])  # noqa: E731
        inv = lambda a: int(f.inv[a])  # noqa: E731
        neg = lambda a: int(f.neg[a])  # noqa: E731
        zeta = f.primitive_element()
    inf = q
    z2 = mul(zeta, zeta)
    shift = [add(x, 1) for x in range(q)] + [inf]
    scale = [mul(z2, x) for x in range(q)] + [inf]
    flip = [inf] + [neg(inv(x)) for x in range(1, q)] + [0]
    gens = [Permutation(a) for a in (shift, scale, flip)]
    order = q * (q * q - 1) // math.gcd(2, q - 1)
    return handle_from_generators(f"PSL2({q})", "psl2", gens, q + 1, order,
                                  "x -> x+1, x -> z^2 x, x -> -1/x on the projective line",
                                  {"simple": q > 3})


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _element_table(t_chain: StabilizerChain) -> tuple[np.ndarray, dict[bytes, int]]:
    elems = np.unique(t_chain.elements(), axis=0)
    return elems, {e.tobytes(): i for i, e in enumerate(elems)}


def conjugation_automorphisms(t_handle: GroupHandle, conjugators: Sequence[Permutation]
                              ) -> list[list[int]]:
    """Automorphism payload: each conjugator ``c`` induces ``x -> c^-1 x c`` on element indices."""
    elems, index = _element_table(t_handle.chain)
    out = []
    for c in conjugators:
        a = c.images
        ai = (~c).images
        out.append([index[a[e[ai]].tobytes()] for e in elems])
    return out


def build_holomorph_diagonal(t_record: GroupSpecRecord | GroupHandle, aut_payload,
                             rng=0) -> GroupHandle:
    """D(2,T) on the elements of T: translations, automorphisms and inversion.

    Elements are indexed by sorting their image arrays.  ``aut_payload`` is a
    list of index permutations; each is spot-checked as a homomorphism on
    100 random pairs.  The handle carries ``left`` and ``right`` translation
    subgroups in ``subgroups``.
    """
    t = t_record if isinstance(t_record, GroupHandle) else handle_from_record(t_record)
    if t.order > HOLOMORPH_CAP:
        raise ValueError(f"|T| = {t.order} exceeds the cap {HOLOMORPH_CAP}")
    elems, index = _element_table(t.chain)
    m = len(elems)
    dt = elems.dtype

    def mult(i: int, j: int) -> int:
        # element i applied first, then j
        return index[elems[j][elems[i]].tobytes()]

    rng = as_rng(rng)
    auts = [np.asarray(a, dtype=np.int64) for a in aut_payload]
    for a in auts:
        if sorted(a.tolist()) != list(range(m)):
            raise ValueError("automorphism payload is not a permutation of the elements")
        for _ in range(100):
            i, j = (int(x) for x in rng.integers(m, size=2))
            if a[mult(i, j)] != mult(int(a[i]), int(a[j])):
                raise ValueError("automorphism payload fails the homomorphism check")

    def inverse_index(i: int) -> int:
        e = elems[i]
        inv = np.empty_like(e)
        inv[e] = np.arange(len(e), dtype=dt)
        return index[inv.tobytes()]

    tg = [index[g.images.tobytes()] for g in t.generators]
    tg_inv = [inverse_index(i) for i in tg]
    right = [Permutation([mult(x, g) for x in range(m)]) for g in tg]
    left = [Permutation([mult(gi, x) for x in range(m)]) for gi in tg_inv]
    inversion = Permutation([inverse_index(x) for x in range(m)])
    gens = left + right + [Permutation(a) for a in auts] + [inversion]
    chain = build_chain(gens, m)
    rec = GroupSpecRecord(f"D(2,{t.name})", "holomorph-diagonal", m, chain.order,
                          [format_cycles(g) for g in gens],
                          "translations, automorphisms and inversion on the elements")
    h = GroupHandle(rec, gens, chain)
    for label, gs in (("left", left), ("right", right)):
        sub = build_chain(gs, m)
        if sub.order != t.order:
            raise AssetError(f"{label} translations have order {sub.order}, expected {t.order}")
        srec = GroupSpecRecord(f"{rec.name}:{label}", "perm-asset", m, t.order,
                               [format_cycles(g) for g in gs], f"{label} translations")
        h.subgroups[label] = GroupHandle(srec, gs, sub)
    return h


def build_product_action_wreath(r_record: GroupSpecRecord | GroupHandle,
                                cap: int = WREATH_CAP) -> GroupHandle:
    """R wr S2 on ordered pairs: R on each coordinate and the coordinate swap.

    The pair ``(i, j)`` is point ``i*d + j``.
    """
    r = r_record if isinstance(r_record, GroupHandle) else handle_from_record(r_record)
    d = r.degree
    if d > cap:
        raise ValueError(f"degree {d} exceeds the cap {cap}")
    i, j = np.divmod(np.arange(d * d), d)
    gens = []
    for g in r.generators:
        a = g.images.astype(np.int64)
        gens.append(Permutation(a[i] * d + j))
        gens.append(Permutation(i * d + a[j]))
    gens.append(Permutation(j * d + i))
    order = r.order ** 2 * 2
    return handle_from_generators(f"{r.name}wrS2", "wreath-product-action", gens, d * d, order,
                                  "product action on ordered pairs")
