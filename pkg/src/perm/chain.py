from __future__ import annotations

import itertools
from typing import Iterator, Optional, Sequence

import numpy as np
from loguru import logger

from src.errors import PreconditionError
from src.perm.perms import Perm, as_perm, first_moved, identity_perm, inverse, is_identity


class StabilizerChain:
    """Base and strong generating set built by deterministic Schreier-Sims.

    Transversals are explicit: transversals[i][point] = (u, u^-1) with base[i]^u = point.
    Built once in the constructor and read-only afterwards.
    """

    def __init__(self, degree: int, generators: Sequence[Perm], base_prefix: Sequence[int] = ()):
        self.degree = degree
        self.base: list[int] = list(dict.fromkeys(int(b) for b in base_prefix))
        self.transversals: list[Optional[dict[int, tuple[Perm, Perm]]]] = [None] * len(self.base)
        self.strong: list[tuple[Perm, int]] = []
        for g in generators:
            if not is_identity(g) and not any(np.array_equal(g, s) for s, _ in self.strong):
                self._add_strong(g)
        self._schreier_sims()

    def _add_strong(self, g: Perm) -> int:
        for level, b in enumerate(self.base):
            if g[b] != b:
                break
        else:
            self.base.append(first_moved(g))
            self.transversals.append(None)
            level = len(self.base) - 1
        self.strong.append((g, level))
        return level

    def level_generators(self, i: int) -> list[Perm]:
        return [g for g, level in self.strong if level >= i]

    def _orbit_transversal(self, point: int, gens: list[Perm]) -> dict[int, tuple[Perm, Perm]]:
        ident = identity_perm(self.degree)
        transversal = {point: (ident, ident)}
        queue = [point]
        for x in queue:
            u = transversal[x][0]
            for s in gens:
                y = int(s[x])
                if y not in transversal:
                    v = s[u]
                    transversal[y] = (v, inverse(v))
                    queue.append(y)
        return transversal

    def _schreier_sims(self) -> None:
        i = len(self.base) - 1
        while i >= 0:
            gens = self.level_generators(i)
            self.transversals[i] = self._orbit_transversal(self.base[i], gens)
            jump = self._first_failure(i, gens)
            i = i - 1 if jump is None else jump
        logger.debug(f"Stabilizer chain on {self.degree} points: base length {len(self.base)}, order {self.order}")

    def _first_failure(self, i: int, gens: list[Perm]) -> Optional[int]:
        transversal = self.transversals[i]
        for beta, (u, _) in transversal.items():
            for s in gens:
                gamma = int(s[beta])
                schreier = transversal[gamma][1][s[u]]
                if is_identity(schreier):
                    continue
                residue, level = self.sift(schreier, i + 1)
                if not is_identity(residue):
                    return self._add_strong(residue)
        return None

    def sift(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        for level in range(start, len(self.base)):
            beta = int(g[self.base[level]])
            entry = self.transversals[level].get(beta)
            if entry is None:
                return g, level
            g = entry[1][g]
        return g, len(self.base)

    @property
    def order(self) -> int:
        order = 1
        for transversal in self.transversals:
            order *= len(transversal)
        return order


class PermGroup:
    """A permutation group on 0..degree-1 given by generators, with a lazily built stabilizer chain."""

    def __init__(self, degree: int, generators: Sequence[Sequence[int] | Perm] = (), base_prefix: Sequence[int] = ()):
        self.degree = int(degree)
        gens = [as_perm(g, self.degree) for g in generators]
        self.generators: tuple[Perm, ...] = tuple(g for g in gens if not is_identity(g))
        self._base_prefix = tuple(int(b) for b in base_prefix)
        self._chain: Optional[StabilizerChain] = None

    @classmethod
    def trivial(cls, degree: int) -> "PermGroup":
        return cls(degree)

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, gens={len(self.generators)})"

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            self._chain = StabilizerChain(self.degree, self.generators, self._base_prefix)
        return self._chain

    @property
    def base(self) -> list[int]:
        return self.chain.base

    @property
    def strong_generators(self) -> list[Perm]:
        return [g for g, _ in self.chain.strong]

    def order(self) -> int:
        return self.chain.order

    def _check(self, g: Perm) -> Perm:
        g = np.asarray(g)
        if g.shape != (self.degree,):
            raise PreconditionError(f"Permutation of degree {g.size} used with group of degree {self.degree}")
        return g

    def contains(self, g: Perm) -> bool:
        residue, level = self.chain.sift(self._check(g))
        return level == len(self.chain.base) and is_identity(residue)

    __contains__ = contains

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(other.contains(g) for g in self.generators)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return self.degree == other.degree and self.order() == other.order() and self.is_subgroup_of(other)

    __hash__ = None

    def orbit(self, x: int) -> list[int]:
        seen = {int(x)}
        queue = [int(x)]
        for y in queue:
            for g in self.generators:
                z = int(g[y])
                if z not in seen:
                    seen.add(z)
                    queue.append(z)
        return sorted(seen)

    def orbits(self) -> list[list[int]]:
        assigned = np.zeros(self.degree, dtype=bool)
        result = []
        for x in range(self.degree):
            if not assigned[x]:
                orbit = self.orbit(x)
                assigned[orbit] = True
                result.append(orbit)
        return result

    def with_base(self, prefix: Sequence[int]) -> "PermGroup":
        """The same group, with a chain whose base starts with `prefix`."""
        seeds = self.strong_generators if self._chain is not None else list(self.generators)
        group = PermGroup(self.degree, seeds, base_prefix=prefix)
        return group

    def pointwise_stabilizer(self, points: Sequence[int]) -> "PermGroup":
        points = list(dict.fromkeys(int(p) for p in points))
        if not points:
            return self
        chain = self.with_base(points).chain
        return PermGroup(self.degree, [g for g, level in chain.strong if level >= len(points)])

    def closure(self, extra: Sequence[Perm]) -> "PermGroup":
        """<self, extra>."""
        return PermGroup(self.degree, list(self.generators) + [as_perm(g, self.degree) for g in extra])

    def random_element(self, rng: np.random.Generator) -> Perm:
        g = identity_perm(self.degree)
        for transversal in reversed(self.chain.transversals):
            points = list(transversal)
            u = transversal[points[int(rng.integers(len(points)))]][0]
            g = u[g]
        return g

    def elements(self) -> Iterator[Perm]:
        levels = [[entry[0] for entry in t.values()] for t in reversed(self.chain.transversals)]
        for combo in itertools.product(*levels):
            g = identity_perm(self.degree)
            for u in combo:
                g = u[g]
            yield g

    def reduce_generators(self) -> "PermGroup":
        """An equal group keeping only generators outside the span of the earlier ones."""
        kept: list[Perm] = []
        current = PermGroup(self.degree)
        target = self.order()
        for g in list(self.generators) + self.strong_generators:
            if current.order() == target:
                break
            if not current.contains(g):
                kept.append(g)
                current = PermGroup(self.degree, kept)
        return current
