"""Backtracking over generator images: exact automorphism groups and isomorphisms under a node budget."""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np
from loguru import logger

from src.config import get_settings
from src.errors import ResourceExhausted
from src.groups.cayley import IDENTITY, CayleyGroup, GroupHom, greedy_generators
from src.perm.chain import PermGroup


class NodeBudget:
    def __init__(self, limit: Optional[int] = None):
        self.limit = get_settings().oracle_budget if limit is None else int(limit)
        self.used = 0

    def spend(self) -> None:
        self.used += 1
        if self.used > self.limit:
            raise ResourceExhausted(f"Backtracking exceeded the node budget of {self.limit}")


def generating_sequence(G: CayleyGroup) -> tuple[int, ...]:
    return greedy_generators(G, np.arange(G.order))


def partial_map(source: CayleyGroup, target: CayleyGroup, gens: Sequence[int], images: Sequence[int]) -> Optional[np.ndarray]:
    """The injective homomorphism <gens> -> target with gens[i] -> images[i], or None.

    Entries outside <gens> are -1.
    """
    result = np.full(source.order, -1, dtype=np.intp)
    result[IDENTITY] = IDENTITY
    used = np.zeros(target.order, dtype=bool)
    used[IDENTITY] = True
    frontier = [IDENTITY]
    while frontier:
        nxt = []
        for x in frontier:
            for s, t in zip(gens, images):
                y = int(source.table[x, s])
                value = int(target.table[result[x], t])
                if result[y] < 0:
                    if used[value]:
                        return None
                    result[y] = value
                    used[value] = True
                    nxt.append(y)
                elif result[y] != value:
                    return None
        frontier = nxt
    return result


class _Search:
    def __init__(self, source: CayleyGroup, target: CayleyGroup, budget: NodeBudget):
        self.source = source
        self.target = target
        self.budget = budget
        self.gens = generating_sequence(source)
        orders = target.element_orders
        self.candidates = [np.flatnonzero(orders == source.element_orders[g]) for g in self.gens]

    def extend(self, images: list[int]) -> Optional[np.ndarray]:
        """Depth-first completion of a consistent prefix of generator images to an isomorphism."""
        self.budget.spend()
        level = len(images)
        mapping = partial_map(self.source, self.target, self.gens[:level], images)
        if mapping is None:
            return None
        if level == len(self.gens):
            return mapping if (mapping >= 0).all() else None
        for y in self.candidates[level]:
            found = self.extend(images + [int(y)])
            if found is not None:
                return found
        return None


def _orbit(point: int, perms: list[np.ndarray]) -> set[int]:
    seen = {point}
    queue = [point]
    for x in queue:
        for g in perms:
            y = int(g[x])
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def aut_bruteforce(G: CayleyGroup, budget: Optional[int] = None) -> PermGroup:
    """Aut(G) as permutations of the elements, one new automorphism per unseen image at each level."""
    counter = NodeBudget(budget)
    search = _Search(G, G, counter)
    gens = search.gens
    found: list[np.ndarray] = []
    for level in range(len(gens) - 1, -1, -1):
        prefix = list(gens[:level])
        stabilizer = [phi for phi in found if all(phi[x] == x for x in prefix)]
        orbit = _orbit(gens[level], stabilizer)
        for y in search.candidates[level]:
            if int(y) in orbit:
                continue
            phi = search.extend(prefix + [int(y)])
            if phi is not None:
                found.append(phi)
                stabilizer.append(phi)
                orbit = _orbit(gens[level], stabilizer)
    group = PermGroup(G.order, found)
    logger.debug(f"Brute-force Aut({G!r}): order {group.order()} after {counter.used} nodes")
    return group


def oracle_iso(G: CayleyGroup, H: CayleyGroup, budget: Optional[int] = None) -> Optional[GroupHom]:
    """Some isomorphism G -> H, or None; exact, or ResourceExhausted past the budget."""
    if G.order != H.order:
        return None
    if not np.array_equal(np.sort(G.element_orders), np.sort(H.element_orders)):
        return None
    search = _Search(G, H, NodeBudget(budget))
    mapping = search.extend([])
    if mapping is None:
        return None
    return GroupHom(G, H, mapping)
