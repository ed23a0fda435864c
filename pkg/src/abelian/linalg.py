"""Linear algebra over F_p and over Z/p^k (echelon and Howell forms, row-vector convention xA = b)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

import numpy as np

from src.errors import InternalConsistencyError, PreconditionError


def valuation(x: int, p: int) -> int:
    if x == 0:
        raise PreconditionError("valuation of zero")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def rref_mod_p(rows: Sequence[Sequence[int]] | np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p, zero rows dropped."""
    M = np.array(rows, dtype=np.int64).reshape(len(rows), -1) % p if len(rows) else np.zeros((0, 0), dtype=np.int64)
    pivots: list[int] = []
    r = 0
    for c in range(M.shape[1]):
        nonzero = np.flatnonzero(M[r:, c]) if r < M.shape[0] else np.array([], dtype=np.int64)
        if nonzero.size == 0:
            continue
        i = r + int(nonzero[0])
        M[[r, i]] = M[[i, r]]
        M[r] = M[r] * pow(int(M[r, c]), -1, p) % p
        others = np.flatnonzero(M[:, c])
        for j in others:
            if j != r:
                M[j] = (M[j] - M[j, c] * M[r]) % p
        pivots.append(c)
        r += 1
        if r == M.shape[0]:
            break
    return M[:r], pivots


def rank_mod_p(M: np.ndarray, p: int) -> int:
    return len(rref_mod_p(M, p)[1]) if np.size(M) else 0


def is_invertible_mod_p(M: np.ndarray, p: int) -> bool:
    M = np.asarray(M)
    return M.shape[0] == M.shape[1] and rank_mod_p(M, p) == M.shape[0]


def inverse_mod_p(M: np.ndarray, p: int) -> np.ndarray:
    M = np.asarray(M, dtype=np.int64)
    m = M.shape[0]
    if m == 0:
        return M.copy()
    reduced, pivots = rref_mod_p(np.hstack([M % p, np.eye(m, dtype=np.int64)]), p)
    if pivots[:m] != list(range(m)):
        raise PreconditionError("Matrix is singular mod p")
    return reduced[:, m:]


class Echelon:
    """An incrementally grown subspace of F_p^m."""

    def __init__(self, dim: int, p: int):
        self.dim = dim
        self.p = p
        self.rows: list[tuple[int, np.ndarray]] = []

    def reduce(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=np.int64) % self.p
        for c, row in self.rows:
            if v[c]:
                v = (v - v[c] * row) % self.p
        return v

    def add(self, v: np.ndarray) -> bool:
        """Adds v to the span; returns False when v was already inside."""
        v = self.reduce(v)
        nonzero = np.flatnonzero(v)
        if nonzero.size == 0:
            return False
        c = int(nonzero[0])
        self.rows.append((c, v * pow(int(v[c]), -1, self.p) % self.p))
        return True

    def __contains__(self, v: np.ndarray) -> bool:
        return not self.reduce(v).any()

    @property
    def rank(self) -> int:
        return len(self.rows)

    def basis(self) -> np.ndarray:
        return rref_mod_p([row for _, row in self.rows], self.p)[0] if self.rows else np.zeros((0, self.dim), dtype=np.int64)


@dataclass
class HowellForm:
    """Echelon rows over Z/p^k with the Howell property; row i has leading entry p^exponents[i]."""

    p: int
    k: int
    ncols: int
    rows: list[np.ndarray] = field(default_factory=list)
    pivots: list[int] = field(default_factory=list)
    exponents: list[int] = field(default_factory=list)

    @property
    def modulus(self) -> int:
        return self.p**self.k

    def row_orders(self) -> list[int]:
        return [self.p ** (self.k - a) for a in self.exponents]

    def span_size(self) -> int:
        size = 1
        for order in self.row_orders():
            size *= order
        return size

    def reduce(self, v: np.ndarray) -> Optional[np.ndarray]:
        """Residue of v after elimination, or None when v leaves the span at a pivot."""
        q = self.modulus
        v = np.asarray(v, dtype=np.int64) % q
        for row, c, a in zip(self.rows, self.pivots, self.exponents):
            step = self.p**a
            if v[c] % step:
                return None
            v = (v - (v[c] // step) * row) % q
        return v

    def contains(self, v: np.ndarray) -> bool:
        residue = self.reduce(v)
        return residue is not None and not residue.any()

    def combinations(self) -> Iterator[np.ndarray]:
        """Every vector of the span exactly once."""
        q = self.modulus
        if not self.rows:
            yield np.zeros(self.ncols, dtype=np.int64)
            return
        stacked = np.array(self.rows, dtype=np.int64)
        for coeffs in itertools.product(*(range(order) for order in self.row_orders())):
            yield np.asarray(coeffs, dtype=np.int64) @ stacked % q

    def random_element(self, rng: np.random.Generator) -> np.ndarray:
        if not self.rows:
            return np.zeros(self.ncols, dtype=np.int64)
        coeffs = np.array([rng.integers(order) for order in self.row_orders()], dtype=np.int64)
        return coeffs @ np.array(self.rows, dtype=np.int64) % self.modulus


def howell_form(rows: Sequence[Sequence[int]] | np.ndarray, p: int, k: int, ncols: Optional[int] = None) -> HowellForm:
    """Howell form of the row span over Z/p^k; pivots by minimal valuation, then lowest index."""
    q = p**k
    work = [np.asarray(r, dtype=np.int64) % q for r in rows]
    if ncols is None:
        ncols = work[0].size if work else 0
    work = [r for r in work if r.any()]
    form = HowellForm(p=p, k=k, ncols=ncols)
    for c in range(ncols):
        candidates = [i for i, r in enumerate(work) if r[c]]
        if not candidates:
            continue
        best = min(candidates, key=lambda i: (valuation(int(work[i][c]), p), i))
        pivot = work.pop(best)
        a = valuation(int(pivot[c]), p)
        unit = int(pivot[c]) // p**a
        pivot = pivot * pow(unit, -1, q) % q
        for i, r in enumerate(work):
            if r[c]:
                work[i] = (r - (int(r[c]) // p**a) * pivot) % q
        extra = pivot * p ** (k - a) % q
        work = [r for r in work if r.any()]
        if extra.any():
            work.append(extra)
        form.rows.append(pivot)
        form.pivots.append(c)
        form.exponents.append(a)
    for i, (row, c, a) in enumerate(zip(form.rows, form.pivots, form.exponents)):
        for j in range(i):
            factor = int(form.rows[j][c]) // p**a
            if factor:
                form.rows[j] = (form.rows[j] - factor * row) % q
    return form


def howell_solve(A: np.ndarray, b: np.ndarray, p: int, k: int) -> tuple[Optional[np.ndarray], HowellForm]:
    """All x with xA = b over Z/p^k: a particular solution (or None) and the Howell form of the kernel."""
    q = p**k
    A = np.asarray(A, dtype=np.int64) % q
    b = np.asarray(b, dtype=np.int64) % q
    nvars, neqs = A.shape
    augmented = np.hstack([A, np.eye(nvars, dtype=np.int64)])
    form = howell_form(augmented, p, k, ncols=neqs + nvars)

    kernel = HowellForm(p=p, k=k, ncols=nvars)
    for row, c, a in zip(form.rows, form.pivots, form.exponents):
        if c >= neqs:
            kernel.rows.append(row[neqs:])
            kernel.pivots.append(c - neqs)
            kernel.exponents.append(a)

    w = np.concatenate([b, np.zeros(nvars, dtype=np.int64)])
    for row, c, a in zip(form.rows, form.pivots, form.exponents):
        if c >= neqs:
            break
        step = p**a
        if w[c] % step:
            return None, kernel
        w = (w - (w[c] // step) * row) % q
    if w[:neqs].any():
        return None, kernel
    x = (-w[neqs:]) % q
    if not np.array_equal(x @ A % q, b):
        raise InternalConsistencyError("Howell solver produced a non-solution")
    return x, kernel
