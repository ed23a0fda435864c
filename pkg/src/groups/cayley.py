from __future__ import annotations

from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np
from loguru import logger

from src.config import Settings, get_settings
from src.errors import InvalidGroupError, NotAHomomorphismError, PreconditionError

IDENTITY = 0
ASSOC_CHUNK = 1 << 20


def closure_mask(table: np.ndarray, generators: Iterable[int]) -> np.ndarray:
    """Boolean mask of the subgroup generated by `generators` (breadth-first product closure)."""
    n = table.shape[0]
    gens = np.unique(np.asarray(list(generators), dtype=np.intp))
    mask = np.zeros(n, dtype=bool)
    mask[IDENTITY] = True
    if gens.size == 0:
        return mask
    frontier = np.array([IDENTITY], dtype=np.intp)
    while frontier.size:
        products = table[np.ix_(frontier, gens)].ravel()
        fresh = np.unique(products[~mask[products]])
        mask[fresh] = True
        frontier = fresh
    return mask


def relabel_table(table: np.ndarray, sigma: np.ndarray) -> np.ndarray:
    """Table of the same group after renaming element x to sigma[x]."""
    sigma = np.asarray(sigma, dtype=np.intp)
    relabeled = np.empty_like(table)
    relabeled[np.ix_(sigma, sigma)] = sigma[table]
    return relabeled


class CayleyGroup:
    """A finite group given by its full multiplication table; element 0 is the identity.

    table[g, h] is the index of the product gh. Tables whose identity is not element 0 are
    re-indexed on load by swapping the identity with 0.
    """

    def __init__(
        self,
        table: Sequence[Sequence[int]] | np.ndarray,
        name: str = "",
        generators: Optional[Sequence[int]] = None,
        validate: bool = True,
        settings: Optional[Settings] = None,
    ):
        table = np.array(table, dtype=np.intp)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise InvalidGroupError(f"Cayley table must be a non-empty square array, got shape {table.shape}")
        n = table.shape[0]
        if table.min() < 0 or table.max() >= n:
            raise InvalidGroupError(f"Cayley table entries must lie in 0..{n - 1}")

        identity = self._find_identity(table)
        if identity != IDENTITY:
            sigma = np.arange(n)
            sigma[[IDENTITY, identity]] = [identity, IDENTITY]
            table = relabel_table(table, sigma)
            if generators is not None:
                generators = [int(sigma[g]) for g in generators]
            logger.debug(f"Re-indexed identity {identity} -> 0 for group {name!r}")

        self.table = table
        self.table.setflags(write=False)
        self.order = n
        self.name = name
        self._given_generators = None if generators is None else tuple(int(g) for g in generators)
        if validate:
            self._validate(settings or get_settings())

    @staticmethod
    def _find_identity(table: np.ndarray) -> int:
        arange = np.arange(table.shape[0])
        candidates = np.flatnonzero((table == arange).all(axis=1) & (table.T == arange).all(axis=1))
        if candidates.size != 1:
            raise InvalidGroupError("Cayley table has no two-sided identity")
        return int(candidates[0])

    def _validate(self, settings: Settings) -> None:
        n, table = self.order, self.table
        arange = np.arange(n)
        if not (np.sort(table, axis=1) == arange).all():
            raise InvalidGroupError("Cayley table is not a Latin square: a row repeats an element")
        if not (np.sort(table, axis=0) == arange[:, None]).all():
            raise InvalidGroupError("Cayley table is not a Latin square: a column repeats an element")

        if n <= settings.assoc_full_bound:
            for a in range(n):
                # (ab)c against a(bc) for every b, c
                if not np.array_equal(table[table[a]], table[a][table]):
                    raise InvalidGroupError(f"Cayley table is not associative (left factor {a})")
            return

        rng = np.random.default_rng(settings.seed)
        remaining = settings.assoc_sample_factor * n * n
        while remaining > 0:
            size = min(remaining, ASSOC_CHUNK)
            a, b, c = rng.integers(0, n, size=(3, size))
            if not np.array_equal(table[table[a, b], c], table[a, table[b, c]]):
                raise InvalidGroupError("Cayley table is not associative (sampled triple)")
            remaining -= size

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"CayleyGroup({self.order}{label})"

    def same_table(self, other: "CayleyGroup") -> bool:
        return self.order == other.order and np.array_equal(self.table, other.table)

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def conj(self, g: int, x: int) -> int:
        """g^x = x^-1 g x."""
        return int(self.table[self.table[self.inverse[x], g], x])

    def commutator(self, a: int, b: int) -> int:
        """[a, b] = a^-1 b^-1 a b."""
        inv = self.inverse
        return int(self.table[self.table[inv[a], inv[b]], self.table[a, b]])

    @cached_property
    def inverse(self) -> np.ndarray:
        inverse = np.argmax(self.table == IDENTITY, axis=1)
        inverse.setflags(write=False)
        return inverse

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        arange = np.arange(n)
        current = arange.copy()
        k = 1
        while (orders == 0).any():
            orders[(current == IDENTITY) & (orders == 0)] = k
            current = self.table[current, arange]
            k += 1
        orders.setflags(write=False)
        return orders

    def power_map(self, k: int) -> np.ndarray:
        """x -> x^k for every element x (k may be negative)."""
        base = np.arange(self.order) if k >= 0 else self.inverse.copy()
        k = abs(k)
        result = np.zeros(self.order, dtype=np.intp)
        while k:
            if k & 1:
                result = self.table[result, base]
            base = self.table[base, base]
            k >>= 1
        return result

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = int(self.inverse[x]), -k
        result = IDENTITY
        while k:
            if k & 1:
                result = int(self.table[result, x])
            x = int(self.table[x, x])
            k >>= 1
        return result

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """The construction generators if given, else a greedy small generating set."""
        if self._given_generators is not None:
            return self._given_generators
        return greedy_generators(self, np.arange(self.order))

    @cached_property
    def conjugacy_classes(self) -> list[np.ndarray]:
        n = self.order
        arange = np.arange(n)
        assigned = np.zeros(n, dtype=bool)
        classes = []
        for x in range(n):
            if assigned[x]:
                continue
            cls = np.unique(self.table[self.table[self.inverse, x], arange])
            assigned[cls] = True
            classes.append(cls)
        return classes

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, np.arange(self.order), self.generators)

    @cached_property
    def trivial(self) -> "Subgroup":
        return Subgroup(self, [IDENTITY], ())

    def inner_automorphism(self, x: int) -> np.ndarray:
        """The permutation g -> x^-1 g x of the elements."""
        return self.table[self.table[self.inverse[x], :], x]

    def is_automorphism_perm(self, perm: Sequence[int] | np.ndarray) -> bool:
        perm = np.asarray(perm, dtype=np.intp)
        if perm.shape != (self.order,) or not np.array_equal(np.sort(perm), np.arange(self.order)):
            return False
        return bool(np.array_equal(perm[self.table], self.table[np.ix_(perm, perm)]))

    def relabel(self, sigma: Sequence[int] | np.ndarray, name: str = "") -> "CayleyGroup":
        """An isomorphic copy in which element x is renamed sigma[x]."""
        sigma = np.asarray(sigma, dtype=np.intp)
        gens = [int(sigma[g]) for g in self.generators]
        return CayleyGroup(relabel_table(self.table, sigma), name=name or self.name, generators=gens, validate=False)


def greedy_generators(G: CayleyGroup, elements: np.ndarray) -> tuple[int, ...]:
    """A generating set of the subgroup on `elements`, picking maximal orders first."""
    elements = np.asarray(elements, dtype=np.intp)
    orders = G.element_orders[elements]
    ranked = elements[np.lexsort((elements, -orders))]
    mask = np.zeros(G.order, dtype=bool)
    mask[IDENTITY] = True
    target = elements.size
    gens: list[int] = []
    for x in ranked:
        if int(mask.sum()) == target:
            break
        if mask[x]:
            continue
        gens.append(int(x))
        mask = closure_mask(G.table, gens)
    return tuple(gens)


class Subgroup:
    """A subgroup of a CayleyGroup given by its sorted element list."""

    def __init__(self, parent: CayleyGroup, elements: Iterable[int], generators: Optional[Sequence[int]] = None):
        self.parent = parent
        self.elements = np.unique(np.asarray(list(elements) if not isinstance(elements, np.ndarray) else elements, dtype=np.intp))
        self.elements.setflags(write=False)
        if self.elements.size == 0 or self.elements[0] != IDENTITY:
            raise PreconditionError("A subgroup must contain the identity")
        self._generators = None if generators is None else tuple(int(g) for g in generators)

    @property
    def order(self) -> int:
        return int(self.elements.size)

    def __len__(self) -> int:
        return self.order

    def __contains__(self, x: int) -> bool:
        return bool(self.mask[x])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and np.array_equal(self.elements, other.elements)

    def __hash__(self) -> int:
        return hash(self.elements.tobytes())

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} of {self.parent!r})"

    @cached_property
    def mask(self) -> np.ndarray:
        mask = np.zeros(self.parent.order, dtype=bool)
        mask[self.elements] = True
        return mask

    @cached_property
    def generators(self) -> tuple[int, ...]:
        if self._generators is not None:
            return self._generators
        return greedy_generators(self.parent, self.elements)

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    def issubset(self, other: "Subgroup") -> bool:
        return bool(other.mask[self.elements].all())

    @cached_property
    def is_abelian(self) -> bool:
        sub = self.parent.table[np.ix_(self.elements, self.elements)]
        return bool(np.array_equal(sub, sub.T))

    @cached_property
    def _embedding(self) -> tuple[CayleyGroup, np.ndarray]:
        position = np.full(self.parent.order, -1, dtype=np.intp)
        position[self.elements] = np.arange(self.order)
        local = position[self.parent.table[np.ix_(self.elements, self.elements)]]
        gens = [int(position[g]) for g in self.generators]
        group = CayleyGroup(local, name=f"sub{self.order}", generators=gens, validate=False)
        return group, self.elements

    def as_group(self) -> tuple[CayleyGroup, np.ndarray]:
        """This subgroup as a standalone group, with embedding[local] = parent index."""
        return self._embedding

    def local_positions(self) -> np.ndarray:
        """parent index -> local index (or -1 outside the subgroup)."""
        position = np.full(self.parent.order, -1, dtype=np.intp)
        position[self.elements] = np.arange(self.order)
        return position


class GroupHom:
    """A homomorphism between Cayley groups given by the image of every source element."""

    def __init__(self, source: CayleyGroup, target: CayleyGroup, images: Sequence[int] | np.ndarray, validate: bool = True):
        self.source = source
        self.target = target
        self.images = np.asarray(images, dtype=np.intp)
        if self.images.shape != (source.order,):
            raise NotAHomomorphismError(f"Expected {source.order} images, got {self.images.shape}")
        if validate and not self.is_homomorphism():
            raise NotAHomomorphismError("Images do not define a homomorphism")

    @classmethod
    def from_generators(cls, source: CayleyGroup, target: CayleyGroup, assignment: dict[int, int]) -> "GroupHom":
        """Extend generator images along the Cayley graph; raises if the extension is inconsistent."""
        images = np.full(source.order, -1, dtype=np.intp)
        images[IDENTITY] = IDENTITY
        gens = list(assignment)
        frontier = [IDENTITY]
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = int(source.table[x, s])
                    value = int(target.table[images[x], assignment[s]])
                    if images[y] < 0:
                        images[y] = value
                        nxt.append(y)
                    elif images[y] != value:
                        raise NotAHomomorphismError("Generator images violate a relation of the source")
            frontier = nxt
        if (images < 0).any():
            raise NotAHomomorphismError("Assigned elements do not generate the source group")
        return cls(source, target, images)

    def __call__(self, x: int) -> int:
        return int(self.images[x])

    def is_homomorphism(self) -> bool:
        img = self.images
        if img[IDENTITY] != IDENTITY:
            return False
        return bool(np.array_equal(img[self.source.table], self.target.table[np.ix_(img, img)]))

    def compose(self, other: "GroupHom") -> "GroupHom":
        """Apply self, then other."""
        if other.source is not self.target and not other.source.same_table(self.target):
            raise PreconditionError("Homomorphisms are not composable")
        return GroupHom(self.source, other.target, other.images[self.images], validate=False)

    def kernel(self) -> Subgroup:
        return Subgroup(self.source, np.flatnonzero(self.images == IDENTITY))

    def image(self) -> Subgroup:
        return Subgroup(self.target, np.unique(self.images))

    def is_bijective(self) -> bool:
        return self.source.order == self.target.order and np.unique(self.images).size == self.target.order

    def inverse(self) -> "GroupHom":
        if not self.is_bijective():
            raise PreconditionError("Only bijective homomorphisms can be inverted")
        inverse = np.empty_like(self.images)
        inverse[self.images] = np.arange(self.source.order)
        return GroupHom(self.target, self.source, inverse, validate=False)
