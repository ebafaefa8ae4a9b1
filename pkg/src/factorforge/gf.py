"""Small finite fields GF(p^k), matrices over them, and induced permutation actions.

Field elements are integers ``0 .. q-1``; for ``k = 2`` the integer
``a + b*p`` stands for ``a + b*x`` modulo the fixed irreducible polynomial
(GF(4): x^2+x+1, GF(9): x^2+1, GF(25): x^2+2).

Matrices act on row vectors from the right, ``v -> v M``, so the permutation
of ``M1 M2`` is "apply M1's permutation, then M2's".  Vectors are numbered
by reading coordinates as base-q digits, most significant first; the
vectors domain is the nonzero vectors in that order and the projective
domain is the normalized vectors (first nonzero coordinate 1) in that order.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .perm import Permutation, perm_dtype

__all__ = [
    "Field",
    "FieldError",
    "field_make",
    "MatrixOverField",
    "ActionReport",
    "matrix_group_to_permutations",
    "vector_domain",
]

# polynomial x^2 + c1*x + c0, stored as (c0, c1)
_IRREDUCIBLE = {2: (1, 1), 3: (1, 0), 5: (2, 0)}


class FieldError(ValueError):
    """Unsupported field, singular matrix, or mixed fields and dimensions."""


class Field:
    """GF(p^k) for p in {2, 3, 5} and k in {1, 2}, with full operation tables."""

    def __init__(self, p: int, k: int):
        if p not in (2, 3, 5) or k not in (1, 2):
            raise FieldError(f"unsupported field GF({p}^{k})")
        self.p = p
        self.k = k
        self.q = p ** k
        self.poly = _IRREDUCIBLE[p] if k == 2 else None
        if self.poly is not None:
            c0, c1 = self.poly
            if any((t * t + c1 * t + c0) % p == 0 for t in range(p)):
                raise FieldError(f"polynomial for GF({p}^2) has a root")
        q = self.q
        els = np.arange(q)
        a0, a1 = els % p, els // p
        self.add = ((a0[:, None] + a0[None, :]) % p + p * ((a1[:, None] + a1[None, :]) % p)).astype(np.int64)
        if k == 1:
            self.mul = (els[:, None] * els[None, :]) % p
        else:
            c0, c1 = self.poly
            b0, b1 = a0[None, :], a1[None, :]
            x0, x1 = a0[:, None], a1[:, None]
            # (x0 + x1 t)(b0 + b1 t) with t^2 = -c1 t - c0
            t2 = x1 * b1
            r0 = (x0 * b0 - c0 * t2) % p
            r1 = (x0 * b1 + x1 * b0 - c1 * t2) % p
            self.mul = (r0 + p * r1).astype(np.int64)
        self.neg = np.array([int(np.flatnonzero(self.add[a] == 0)[0]) for a in range(q)], dtype=np.int64)
        self.inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            self.inv[a] = int(np.flatnonzero(self.mul[a] == 1)[0])
        for t in (self.add, self.mul, self.neg, self.inv):
            t.setflags(write=False)

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self) -> int:
        return hash((self.p, self.k))

    def elements(self) -> range:
        return range(self.q)

    def primitive_element(self) -> int:
        for z in range(2, self.q) if self.q > 2 else [1]:
            if self.multiplicative_order(z) == self.q - 1:
                return z
        return 1

    def multiplicative_order(self, a: int) -> int:
        if a == 0:
            raise FieldError("zero has no multiplicative order")
        x, n = a, 1
        while x != 1:
            x = int(self.mul[x, a])
            n += 1
        return n

    def power(self, a: int, e: int) -> int:
        r = 1
        for _ in range(e):
            r = int(self.mul[r, a])
        return r

    def frobenius(self, a: int) -> int:
        return self.power(a, self.p)

    # --- vectorised linear algebra ------------------------------------
    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a @ b) % self.p
        out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        for t in range(a.shape[1]):
            out = self.add[out, self.mul[a[:, t][:, None], b[t][None, :]]]
        return out

    def det(self, m: np.ndarray) -> int:
        m = np.array(m, dtype=np.int64)
        n = m.shape[0]
        d = 1
        for c in range(n):
            piv = next((r for r in range(c, n) if m[r, c]), None)
            if piv is None:
                return 0
            if piv != c:
                m[[c, piv]] = m[[piv, c]]
                d = int(self.neg[d])
            d = int(self.mul[d, m[c, c]])
            ic = int(self.inv[m[c, c]])
            for r in range(c + 1, n):
                if m[r, c]:
                    f = int(self.mul[m[r, c], ic])
                    m[r] = self.add[m[r], self.neg[self.mul[f, m[c]]]]
        return d


@lru_cache(maxsize=None)
def field_make(p: int, k: int = 1) -> Field:
    return Field(p, k)


@dataclass(frozen=True, eq=False)
class MatrixOverField:
    """Square matrix with entries in ``field``."""

    field: Field
    entries: np.ndarray

    def __post_init__(self):
        e = np.array(self.entries, dtype=np.int64)
        if e.ndim != 2 or e.shape[0] != e.shape[1]:
            raise FieldError("matrix must be square")
        if e.min(initial=0) < 0 or e.max(initial=0) >= self.field.q:
            raise FieldError("matrix entry outside the field")
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __matmul__(self, other: "MatrixOverField") -> "MatrixOverField":
        if other.field != self.field or other.dim != self.dim:
            raise FieldError("mixed fields or dimensions")
        return MatrixOverField(self.field, self.field.matmul(self.entries, other.entries))

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, MatrixOverField) and other.field == self.field
                and np.array_equal(other.entries, self.entries))

    def __hash__(self) -> int:
        return hash((self.field, self.entries.tobytes()))

    def det(self) -> int:
        return self.field.det(self.entries)

    def is_scalar(self) -> bool:
        e = self.entries
        return bool(np.array_equal(e, e[0, 0] * np.eye(self.dim, dtype=np.int64)))

    @classmethod
    def identity(cls, field: Field, n: int) -> "MatrixOverField":
        return cls(field, np.eye(n, dtype=np.int64))

    def tolist(self) -> list[list[int]]:
        return self.entries.tolist()


@lru_cache(maxsize=16)
def vector_domain(p: int, k: int, n: int, mode: str) -> tuple[np.ndarray, np.ndarray]:
    """Domain vectors (rows) and the lookup table code -> domain index (-1 if absent)."""
    f = field_make(p, k)
    q = f.q
    codes = np.arange(1, q ** n)
    digits = np.stack([(codes // q ** (n - 1 - i)) % q for i in range(n)], axis=1)
    if mode == "projective":
        first = digits[np.arange(len(digits)), (digits != 0).argmax(axis=1)]
        digits = digits[first == 1]
        codes = codes[first == 1]
    elif mode != "vectors":
        raise FieldError(f"unknown action mode {mode!r}")
    lookup = np.full(q ** n, -1, dtype=np.int64)
    lookup[codes] = np.arange(len(codes))
    digits.setflags(write=False)
    lookup.setflags(write=False)
    return digits, lookup


def _encode(f: Field, vecs: np.ndarray) -> np.ndarray:
    n = vecs.shape[1]
    weights = f.q ** np.arange(n - 1, -1, -1)
    return vecs @ weights


def _normalize(f: Field, vecs: np.ndarray) -> np.ndarray:
    lead = vecs[np.arange(len(vecs)), (vecs != 0).argmax(axis=1)]
    return f.mul[vecs, f.inv[lead][:, None]]


def matrix_permutation(m: MatrixOverField, mode: str) -> Permutation:
    f = m.field
    vecs, lookup = vector_domain(f.p, f.k, m.dim, mode)
    img = f.matmul(vecs, m.entries)
    if mode == "projective":
        img = _normalize(f, img)
    idx = lookup[_encode(f, img)]
    if (idx < 0).any():
        raise FieldError("matrix is singular")
    return Permutation._wrap(idx.astype(perm_dtype(len(vecs))))


@dataclass
class ActionReport:
    mode: str
    domain_size: int
    faithful: bool
    determinants: list[int]


def matrix_group_to_permutations(mats: Sequence[MatrixOverField], mode: str = "projective"
                                 ) -> tuple[list[Permutation], ActionReport]:
    """Permutations induced on nonzero vectors or on projective points.

    A generator that acts trivially must be the identity (vectors mode) or a
    scalar (projective mode); anything else raises ``FieldError``.
    """
    if not mats:
        raise FieldError("no matrices given")
    f, n = mats[0].field, mats[0].dim
    if any(m.field != f or m.dim != n for m in mats):
        raise FieldError("mixed fields or dimensions")
    dets = [m.det() for m in mats]
    if any(d == 0 for d in dets):
        raise FieldError("singular matrix")
    perms = [matrix_permutation(m, mode) for m in mats]
    faithful = True
    for m, p in zip(mats, perms):
        if p.is_identity():
            ok = m.is_scalar() if mode == "projective" else bool(np.array_equal(m.entries, np.eye(n)))
            faithful = faithful and ok
    if not faithful:
        raise FieldError("a non-scalar matrix acts trivially")
    size = perms[0].degree
    return perms, ActionReport(mode, size, faithful, dets)
