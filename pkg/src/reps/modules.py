"""Submodules, irreducibles and equivalence for representations on elementary abelian p-groups."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional

import numpy as np
from loguru import logger

from src.abelian.basis import AbelianBasis
from src.abelian.linalg import Echelon, inverse_mod_p, is_invertible_mod_p, rref_mod_p
from src.abelian.matrices import HomMatrix
from src.errors import InternalConsistencyError, PreconditionError
from src.groups.cayley import Subgroup
from src.reps.representation import Representation


def _require_elementary(alpha: Representation) -> None:
    if not alpha.is_elementary:
        raise PreconditionError(f"Module {alpha.module.orders} is not elementary abelian")


def _generator_arrays(alpha: Representation) -> list[np.ndarray]:
    return [M.array % alpha.p for M in alpha.generator_images]


def projective_vectors(dim: int, p: int) -> Iterator[np.ndarray]:
    """One nonzero vector per line of F_p^dim: first nonzero entry 1, in lexicographic order."""
    for lead in range(dim):
        for tail in itertools.product(range(p), repeat=dim - lead - 1):
            v = np.zeros(dim, dtype=np.int64)
            v[lead] = 1
            v[lead + 1:] = tail
            yield v


def spin(vectors: list[np.ndarray], mats: list[np.ndarray], p: int, dim: int) -> Echelon:
    """The smallest submodule containing `vectors`."""
    span = Echelon(dim, p)
    queue = []
    for v in vectors:
        if span.add(v):
            queue.append(np.asarray(v, dtype=np.int64) % p)
    while queue:
        v = queue.pop()
        for M in mats:
            w = v @ M % p
            if span.add(w):
                queue.append(w)
    return span


@dataclass
class Submodule:
    """A submodule of F_p^m in reduced row echelon form."""

    rows: np.ndarray
    pivots: list[int]
    p: int

    @classmethod
    def from_echelon(cls, span: Echelon) -> "Submodule":
        rows, pivots = rref_mod_p([row for _, row in span.rows], span.p) if span.rows else (np.zeros((0, span.dim), dtype=np.int64), [])
        return cls(rows, pivots, span.p)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def key(self) -> bytes:
        return self.rows.tobytes()

    def vectors(self) -> Iterator[np.ndarray]:
        for coeffs in itertools.product(range(self.p), repeat=self.dim):
            yield np.asarray(coeffs, dtype=np.int64) @ self.rows % self.p

    def restrict(self, alpha: Representation) -> Representation:
        """alpha on this submodule, in the coordinates read off at the pivot columns."""
        images = [(self.rows @ M % self.p)[:, self.pivots] for M in _generator_arrays(alpha)]
        return Representation.from_arrays(alpha.H, [self.p] * self.dim, images, validate=False)

    def to_subgroup(self, basis: AbelianBasis) -> Subgroup:
        if basis.group is None:
            raise PreconditionError("A virtual module has no subgroup to return")
        elements = [int(basis.element(v)) for v in self.vectors()]
        return Subgroup(basis.group, elements)


def is_irreducible(alpha: Representation) -> bool:
    _require_elementary(alpha)
    dim, p = alpha.rank, alpha.p
    if dim == 0:
        return False
    mats = _generator_arrays(alpha)
    return all(spin([v], mats, p, dim).rank == dim for v in projective_vectors(dim, p))


def irreducible_submodules(alpha: Representation) -> list[Submodule]:
    """Every irreducible submodule, each spun from one vector, without repetition."""
    _require_elementary(alpha)
    dim, p = alpha.rank, alpha.p
    mats = _generator_arrays(alpha)
    seen: set[bytes] = set()
    result = []
    for v in projective_vectors(dim, p):
        candidate = Submodule.from_echelon(spin([v], mats, p, dim))
        if candidate.key in seen:
            continue
        seen.add(candidate.key)
        if all(
            spin([w], mats, p, dim).rank == candidate.dim
            for w in candidate.vectors()
            if w.any()
        ):
            result.append(candidate)
    logger.debug(f"{len(result)} irreducible submodules in dimension {dim} over F_{p}")
    return result


def _spin_recipe(u: np.ndarray, mats: list[np.ndarray], p: int, dim: int) -> tuple[np.ndarray, list[tuple[int, int]]]:
    """Spin u, recording each new basis vector as (parent index, generator index)."""
    span = Echelon(dim, p)
    span.add(u)
    basis = [np.asarray(u, dtype=np.int64) % p]
    recipe: list[tuple[int, int]] = []
    i = 0
    while i < len(basis):
        for g, M in enumerate(mats):
            w = basis[i] @ M % p
            if span.add(w):
                basis.append(w)
                recipe.append((i, g))
        i += 1
    return np.array(basis, dtype=np.int64), recipe


def _follow_recipe(v: np.ndarray, mats: list[np.ndarray], p: int, recipe: list[tuple[int, int]]) -> np.ndarray:
    rows = [np.asarray(v, dtype=np.int64) % p]
    for parent, g in recipe:
        rows.append(rows[parent] @ mats[g] % p)
    return np.array(rows, dtype=np.int64)


def irreducible_equivalent(alpha: Representation, beta: Representation, check: bool = True) -> Optional[HomMatrix]:
    """Some psi in Aut(A) with alpha^psi = beta, found by extending u -> v H-linearly, or None."""
    _require_elementary(alpha)
    _require_elementary(beta)
    if alpha.rank != beta.rank or alpha.p != beta.p:
        return None
    if check and not (is_irreducible(alpha) and is_irreducible(beta)):
        raise PreconditionError("irreducible_equivalent requires irreducible representations")
    dim, p = alpha.rank, alpha.p
    mats_a = _generator_arrays(alpha)
    mats_b = _generator_arrays(beta)
    u = np.zeros(dim, dtype=np.int64)
    u[0] = 1
    B, recipe = _spin_recipe(u, mats_a, p, dim)
    if B.shape[0] != dim:
        raise InternalConsistencyError("An irreducible module is not spun by a nonzero vector")
    B_inverse = inverse_mod_p(B, p)
    for v in itertools.product(range(p), repeat=dim):
        v = np.asarray(v, dtype=np.int64)
        if not v.any():
            continue
        C = _follow_recipe(v, mats_b, p, recipe)
        if not is_invertible_mod_p(C, p):
            continue
        phi = B_inverse @ C % p
        if all(np.array_equal(Ma @ phi % p, phi @ Mb % p) for Ma, Mb in zip(mats_a, mats_b)):
            return HomMatrix(alpha.decomposition, phi)
    return None


class ClassRegistry:
    """Irreducible representations of one group up to equivalence, numbered by first appearance."""

    def __init__(self):
        self.representatives: list[Representation] = []
        self._cache: dict[tuple[int, int, tuple[int, ...]], list[int]] = {}

    def __len__(self) -> int:
        return len(self.representatives)

    def identify(self, rho: Representation) -> int:
        signature = (rho.p, rho.rank, rho.traces)
        candidates = self._cache.setdefault(signature, [])
        for index in candidates:
            if irreducible_equivalent(self.representatives[index], rho, check=False) is not None:
                return index
        self.representatives.append(rho)
        candidates.append(len(self.representatives) - 1)
        return len(self.representatives) - 1


@dataclass
class Decomposition:
    constituents: list[Submodule]
    classes: list[int]
    registry: ClassRegistry = field(repr=False)

    def multiplicities(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for c in self.classes:
            counts[c] = counts.get(c, 0) + 1
        return counts


def decompose(alpha: Representation, registry: Optional[ClassRegistry] = None) -> Decomposition:
    """A direct sum of irreducible submodules, chosen greedily, with equivalence classes."""
    _require_elementary(alpha)
    if alpha.H.order % alpha.p == 0:
        raise PreconditionError(f"p = {alpha.p} divides |H| = {alpha.H.order}; modules need not be semisimple")
    registry = ClassRegistry() if registry is None else registry
    dim, p = alpha.rank, alpha.p
    current = Echelon(dim, p)
    constituents: list[Submodule] = []
    classes: list[int] = []
    for S in irreducible_submodules(alpha):
        if current.rank == dim:
            break
        if all(row in current for row in S.rows):
            continue
        for row in S.rows:
            current.add(row)
        constituents.append(S)
        classes.append(registry.identify(S.restrict(alpha)))
    if current.rank != dim:
        raise InternalConsistencyError("Greedy decomposition did not exhaust the module")
    return Decomposition(constituents, classes, registry)
