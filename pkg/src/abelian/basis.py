from __future__ import annotations

from functools import cached_property
from math import prod
from typing import Optional, Sequence

import numpy as np
from loguru import logger

from src.errors import InternalConsistencyError, PreconditionError
from src.groups.cayley import IDENTITY, CayleyGroup
from src.groups.numbers import prime_divisors
from src.groups.subgroups import p_elements


def _prime_of(order: int) -> int:
    primes = prime_divisors(order)
    if len(primes) != 1:
        raise PreconditionError(f"{order} is not a prime power")
    return primes[0]


class AbelianBasis:
    """Cyclic generators g_1..g_t of an abelian group with orders n_1..n_t.

    Elements are addressed by coordinate vectors (c_1, .., c_t) with 0 <= c_i < n_i, and by the
    mixed-radix key sum(c_i * R_i), the first coordinate being the most significant. A basis
    without a group is virtual: element x is then the key x itself.
    """

    def __init__(self, orders: Sequence[int], generators: Sequence[int] = (), group: Optional[CayleyGroup] = None):
        self.orders = tuple(int(n) for n in orders)
        if any(n < 2 for n in self.orders):
            raise PreconditionError("Cyclic orders must be at least 2")
        self.primes = tuple(_prime_of(n) for n in self.orders)
        self.group = group
        self.generators = tuple(int(g) for g in generators)
        if group is not None and len(self.generators) != len(self.orders):
            raise PreconditionError("One generator per cyclic order is required")
        self.size = prod(self.orders)
        radix = [1] * len(self.orders)
        for i in range(len(self.orders) - 2, -1, -1):
            radix[i] = radix[i + 1] * self.orders[i + 1]
        self.radix = np.asarray(radix, dtype=np.int64)
        self.moduli = np.asarray(self.orders, dtype=np.int64)
        if group is not None:
            self._check_recomposition()

    @classmethod
    def standard(cls, orders: Sequence[int]) -> "AbelianBasis":
        """The virtual group Z/n_1 + ... + Z/n_t with element index equal to the key."""
        return cls(orders)

    def __repr__(self) -> str:
        return f"AbelianBasis(orders={self.orders})"

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def is_virtual(self) -> bool:
        return self.group is None

    @property
    def prime(self) -> int:
        if len(set(self.primes)) != 1:
            raise PreconditionError("Basis is not of a p-group")
        return self.primes[0]

    @cached_property
    def coords_of_key(self) -> np.ndarray:
        if not self.orders:
            return np.zeros((1, 0), dtype=np.int64)
        coords = np.stack(np.unravel_index(np.arange(self.size), self.orders), axis=1).astype(np.int64)
        coords.setflags(write=False)
        return coords

    @cached_property
    def element_of_key(self) -> np.ndarray:
        if self.group is None:
            return np.arange(self.size, dtype=np.intp)
        table = self.group.table
        current = np.array([IDENTITY], dtype=np.intp)
        for g, n in zip(self.generators, self.orders):
            powers = np.empty(n, dtype=np.intp)
            powers[0] = IDENTITY
            for i in range(1, n):
                powers[i] = table[powers[i - 1], g]
            current = table[current[:, None], powers[None, :]].ravel()
        return current

    @cached_property
    def key_of_element(self) -> np.ndarray:
        keys = np.full(self.size, -1, dtype=np.intp)
        keys[self.element_of_key] = np.arange(self.size)
        return keys

    def _check_recomposition(self) -> None:
        if self.group.order != self.size:
            raise InternalConsistencyError(f"Basis orders multiply to {self.size}, group has order {self.group.order}")
        if (self.key_of_element < 0).any():
            raise InternalConsistencyError("Cyclic generators do not give a direct decomposition")

    def key(self, coords: np.ndarray) -> np.ndarray:
        coords = np.asarray(coords, dtype=np.int64) % self.moduli
        return coords @ self.radix

    def coordinates(self, x: int | np.ndarray) -> np.ndarray:
        return self.coords_of_key[self.key_of_element[x]]

    def element(self, coords: np.ndarray) -> int | np.ndarray:
        keys = self.key(coords)
        result = self.element_of_key[keys]
        return int(result) if np.ndim(result) == 0 else result

    @cached_property
    def coordinate_matrix(self) -> np.ndarray:
        """Row x holds the coordinates of element x."""
        return self.coords_of_key[self.key_of_element]

    def homocyclic(self) -> "HomocyclicDecomposition":
        return HomocyclicDecomposition(self)


class HomocyclicDecomposition:
    """A = A_1 + ... + A_k for an abelian p-group, A_i homocyclic of exponent e_i, e_1 < ... < e_k."""

    def __init__(self, basis: AbelianBasis):
        self.basis = basis
        self.p = basis.prime if basis.rank else 1
        components: list[tuple[int, int, tuple[int, ...]]] = []
        offset = 0
        for exponent in sorted(set(basis.orders)):
            positions = tuple(i for i, n in enumerate(basis.orders) if n == exponent)
            if positions != tuple(range(offset, offset + len(positions))):
                raise PreconditionError("Basis orders must be sorted ascending")
            components.append((exponent, len(positions), positions))
            offset += len(positions)
        self.components = tuple(components)

    def __repr__(self) -> str:
        parts = ", ".join(f"({e})^{m}" for e, m, _ in self.components)
        return f"HomocyclicDecomposition(p={self.p}: {parts})"

    @property
    def rank(self) -> int:
        return self.basis.rank

    @property
    def moduli(self) -> np.ndarray:
        return self.basis.moduli

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(e for e, _, _ in self.components)

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(m for _, m, _ in self.components)

    @property
    def k(self) -> int:
        """log_p of the exponent of A."""
        if not self.components:
            return 0
        top = self.components[-1][0]
        k = 0
        while top > 1:
            top //= self.p
            k += 1
        return k

    def block(self, i: int) -> slice:
        positions = self.components[i][2]
        return slice(positions[0], positions[-1] + 1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HomocyclicDecomposition):
            return NotImplemented
        return self.basis.orders == other.basis.orders

    def __hash__(self) -> int:
        return hash(self.basis.orders)


def _max_order_basis(G: CayleyGroup, elements: np.ndarray) -> list[int]:
    """Greedy basis of an abelian p-subgroup: repeatedly the largest-order x with <x> meeting the span trivially."""
    table = G.table
    orders = G.element_orders
    target = elements.size
    ranked = elements[np.lexsort((elements, -orders[elements]))]
    span = np.zeros(G.order, dtype=bool)
    span[IDENTITY] = True
    picks: list[int] = []
    while int(span.sum()) < target:
        for x in ranked:
            o = int(orders[x])
            if span[x] or o == 1:
                continue
            p = _prime_of(o)
            # <x> meets the span trivially iff its order-p element lies outside
            if span[G.power(int(x), o // p)]:
                continue
            powers = np.empty(o, dtype=np.intp)
            powers[0] = IDENTITY
            for i in range(1, o):
                powers[i] = table[powers[i - 1], x]
            members = np.flatnonzero(span)
            span[table[members[:, None], powers[None, :]].ravel()] = True
            picks.append(int(x))
            break
        else:
            raise InternalConsistencyError("Greedy basis extraction found no admissible element")
    return picks


def abelian_basis(G: CayleyGroup) -> AbelianBasis:
    if not G.is_abelian:
        raise PreconditionError(f"{G!r} is not abelian")
    gens: list[int] = []
    orders: list[int] = []
    for p in prime_divisors(G.order):
        picks = _max_order_basis(G, p_elements(G, p))
        picks.sort(key=lambda x: (int(G.element_orders[x]), x))
        gens.extend(picks)
        orders.extend(int(G.element_orders[x]) for x in picks)
    basis = AbelianBasis(orders, gens, G)
    logger.debug(f"Abelian basis of {G!r}: orders {basis.orders}")
    return basis


def invariant_factors(orders: Sequence[int]) -> tuple[int, ...]:
    """Invariant factors d_1 | d_2 | ... from a list of prime-power cyclic orders."""
    by_prime: dict[int, list[int]] = {}
    for n in orders:
        if n > 1:
            by_prime.setdefault(_prime_of(n), []).append(int(n))
    length = max((len(v) for v in by_prime.values()), default=0)
    factors = [1] * length
    for powers in by_prime.values():
        powers.sort()
        for i, q in enumerate(powers):
            factors[length - len(powers) + i] *= q
    return tuple(factors)
