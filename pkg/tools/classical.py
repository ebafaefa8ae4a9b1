"""Form-based generators for the classical groups used by the asset builder.

Only prime fields here (GF(2), GF(3)); the unitary group over GF(25) is
handled in build_assets.py with the field tables.  Matrices act on row
vectors from the right.
"""
from __future__ import annotations

import itertools

import numpy as np


def all_vectors(n: int, p: int) -> np.ndarray:
    return np.array(list(itertools.product(range(p), repeat=n)), dtype=np.int64)[1:]


class QuadraticForm:
    """Q(x) = sum_{i<=j} a_ij x_i x_j over GF(p), polar form B = A + A^T."""

    def __init__(self, upper: np.ndarray, p: int):
        self.A = np.triu(np.asarray(upper, dtype=np.int64)) % p
        self.p = p
        self.B = (self.A + self.A.T) % p
        self.n = self.A.shape[0]

    def Q(self, x: np.ndarray) -> np.ndarray:
        x = np.atleast_2d(x)
        return np.einsum("ki,ij,kj->k", x, self.A, x) % self.p

    def polar(self, x, y) -> int:
        return int(np.asarray(x) @ self.B @ np.asarray(y) % self.p)

    def reflection(self, v: np.ndarray) -> np.ndarray:
        """Reflection (q odd) or orthogonal transvection (q = 2) in v, Q(v) != 0."""
        p = self.p
        qv = int(self.Q(v)[0])
        if qv == 0:
            raise ValueError("v is singular")
        inv = pow(qv, -1, p)
        # x -> x - B(x, v) Q(v)^-1 v
        return (np.eye(self.n, dtype=np.int64) - inv * np.outer(self.B @ v, v)) % p

    def preserves(self, m: np.ndarray) -> bool:
        vecs = all_vectors(self.n, self.p) if self.p ** self.n <= 70000 else None
        if vecs is None:
            raise ValueError("space too large for an exhaustive check")
        return bool(np.array_equal(self.Q(vecs), self.Q(vecs @ m % self.p)))

    def nonsingular_vectors(self, value: int | None = None) -> np.ndarray:
        vecs = all_vectors(self.n, self.p)
        qs = self.Q(vecs)
        keep = qs != 0 if value is None else qs == value
        return vecs[keep]

    def singular_vectors(self) -> np.ndarray:
        vecs = all_vectors(self.n, self.p)
        return vecs[self.Q(vecs) == 0]


def symplectic_transvection(J: np.ndarray, v: np.ndarray, p: int, a: int = 1) -> np.ndarray:
    """x -> x + a B(x, v) v with B(x, y) = x J y^T."""
    return (np.eye(J.shape[0], dtype=np.int64) + a * np.outer(J @ v, v)) % p


def standard_symplectic(n: int, p: int) -> np.ndarray:
    m = n // 2
    J = np.zeros((n, n), dtype=np.int64)
    for i in range(m):
        J[i, n - 1 - i] = 1
        J[n - 1 - i, i] = p - 1
    return J


def omega_generators(form: QuadraticForm, rng: np.random.Generator, count: int) -> list[np.ndarray]:
    """Products of two reflections lying in Omega (spinor norm 1, det 1).

    For q odd both vectors get Q = 1, for q = 2 any two nonsingular vectors.
    Products r_u r_v generate a normal subgroup of the full orthogonal group
    inside Omega, so for the simple cases they generate Omega itself.
    """
    cands = form.nonsingular_vectors(1)
    out = []
    for _ in range(count):
        u, v = cands[rng.choice(len(cands), 2, replace=False)]
        out.append(form.reflection(u) @ form.reflection(v) % form.p)
    return out
