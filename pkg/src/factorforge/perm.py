"""Permutations of a fixed finite domain.

Points are 0-based internally and 1-based in cycle notation.  Products are
read left to right: ``compose(p, q)`` applies ``p`` first, then ``q``, so
``i -> q[p[i]]``.  The same convention holds everywhere in the package.
"""
from __future__ import annotations

import math
import re
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Permutation",
    "PermutationError",
    "parse_cycles",
    "format_cycles",
    "compose",
    "inverse",
    "element_order",
    "identity",
    "perm_dtype",
    "array_order",
]

MAX_DEGREE = 100_000


class PermutationError(ValueError):
    """Malformed permutation input or incompatible degrees."""


def perm_dtype(degree: int) -> np.dtype:
    return np.dtype(np.uint16) if degree <= 0xFFFF else np.dtype(np.int32)


class Permutation:
    """Immutable bijection of ``{0, ..., degree-1}`` stored as an image array."""

    __slots__ = ("_a", "_hash")

    def __init__(self, images: Sequence[int] | np.ndarray, *, check: bool = True):
        a = np.asarray(images)
        d = a.shape[0] if a.ndim == 1 else -1
        if d < 1:
            raise PermutationError("a permutation needs a 1-d image array of positive length")
        if d > MAX_DEGREE:
            raise PermutationError(f"degree {d} exceeds the supported maximum {MAX_DEGREE}")
        a = a.astype(perm_dtype(d), copy=True)
        if check:
            seen = np.zeros(d, dtype=bool)
            if int(a.max()) >= d or int(np.asarray(images).min()) < 0:
                raise PermutationError("image out of range")
            seen[a] = True
            if not seen.all():
                raise PermutationError("images do not form a bijection")
        a.setflags(write=False)
        self._a = a
        self._hash = None

    @classmethod
    def _wrap(cls, a: np.ndarray) -> "Permutation":
        p = cls.__new__(cls)
        a = np.ascontiguousarray(a, dtype=perm_dtype(a.shape[0]))
        if a.flags.writeable:
            a = a.copy()
            a.setflags(write=False)
        p._a = a
        p._hash = None
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._wrap(np.arange(degree, dtype=perm_dtype(degree)))

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> "Permutation":
        return parse_cycles(text, degree)

    @property
    def images(self) -> np.ndarray:
        """Read-only image array."""
        return self._a

    @property
    def degree(self) -> int:
        return int(self._a.shape[0])

    def __len__(self) -> int:
        return self.degree

    def __call__(self, point: int) -> int:
        return int(self._a[point])

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __invert__(self) -> "Permutation":
        return inverse(self)

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return inverse(self) ** (-k)
        result = np.arange(self.degree, dtype=self._a.dtype)
        base = self._a
        while k:
            if k & 1:
                result = base[result]
            base = base[base]
            k >>= 1
        return Permutation._wrap(result)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.degree == other.degree and bool(np.array_equal(self._a, other._a))

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.degree, self._a.tobytes()))
        return self._hash

    def is_identity(self) -> bool:
        return bool(np.array_equal(self._a, np.arange(self.degree)))

    def order(self) -> int:
        return element_order(self)

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point (0-based)."""
        a = self._a.tolist()
        seen = [False] * len(a)
        out = []
        for i in range(len(a)):
            if seen[i] or a[i] == i:
                continue
            cyc = [i]
            seen[i] = True
            j = a[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = a[j]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        lengths = [len(c) for c in self.cycles()]
        fixed = self.degree - sum(lengths)
        return tuple(sorted(lengths + [1] * fixed, reverse=True))

    def support(self) -> np.ndarray:
        return np.flatnonzero(self._a != np.arange(self.degree))

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self)!r}, degree={self.degree})"

    def __str__(self) -> str:
        return format_cycles(self)


def identity(degree: int) -> Permutation:
    return Permutation.identity(degree)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse a product of disjoint cycles over 1-based points.

    Whitespace is ignored, entries inside a cycle are separated by commas or
    blanks, and ``"()"`` is the identity.
    """
    if degree < 1:
        raise PermutationError("degree must be positive")
    compact = text.strip()
    if not compact:
        raise PermutationError("empty cycle string")
    pos = 0
    images = list(range(degree))
    used: set[int] = set()
    for m in _CYCLE_RE.finditer(compact):
        if compact[pos:m.start()].strip():
            raise PermutationError(f"malformed token {compact[pos:m.start()]!r}")
        pos = m.end()
        body = m.group(1).strip()
        if not body:
            continue
        tokens = [t for t in re.split(r"[,\s]+", body) if t]
        pts = []
        for t in tokens:
            if not t.isdigit():
                raise PermutationError(f"malformed point {t!r}")
            v = int(t)
            if v < 1 or v > degree:
                raise PermutationError(f"point {v} outside 1..{degree}")
            if v in used:
                raise PermutationError(f"point {v} repeated")
            used.add(v)
            pts.append(v - 1)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a] = b
    if compact[pos:].strip():
        raise PermutationError(f"malformed token {compact[pos:]!r}")
    return Permutation(images, check=False)


def format_cycles(p: Permutation) -> str:
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + ",".join(str(i + 1) for i in c) + ")" for c in cycles)


def _check_degrees(p: Permutation, q: Permutation) -> None:
    if p.degree != q.degree:
        raise PermutationError(f"degree mismatch: {p.degree} vs {q.degree}")


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply ``p`` first, then ``q``."""
    _check_degrees(p, q)
    return Permutation._wrap(q.images[p.images])


def inverse(p: Permutation) -> Permutation:
    inv = np.empty_like(p.images)
    inv[p.images] = np.arange(p.degree, dtype=inv.dtype)
    return Permutation._wrap(inv)


def array_order(a: np.ndarray) -> int:
    """Order of a permutation given as a raw image array."""
    d = a.shape[0]
    start = np.arange(d, dtype=a.dtype)
    cur = a.copy()
    period = np.zeros(d, dtype=np.int64)
    step = 1
    pending = np.ones(d, dtype=bool)
    while True:
        back = pending & (cur == start)
        if back.any():
            period[back] = step
            pending &= ~back
            if not pending.any():
                break
        cur = a[cur]
        step += 1
    return math.lcm(*np.unique(period).tolist())


def element_order(p: Permutation) -> int:
    """Least m >= 1 with p^m = identity (lcm of the cycle lengths)."""
    return array_order(p.images)


def product(perms: Iterable[Permutation], degree: int) -> Permutation:
    a = np.arange(degree, dtype=perm_dtype(degree))
    for p in perms:
        a = p.images[a]
    return Permutation._wrap(a)
