from __future__ import annotations

from typing import Iterator, Optional, Sequence

import numpy as np

from src.perm.chain import PermGroup
from src.perm.perms import Perm, as_perm, compose, format_images, identity_perm, inverse


class Coset:
    """The right coset subgroup * representative, or the empty set."""

    def __init__(self, degree: int, subgroup: Optional[PermGroup] = None, representative: Optional[Perm] = None):
        self.degree = degree
        self.subgroup = subgroup
        if subgroup is not None and representative is None:
            representative = identity_perm(degree)
        self.representative = None if representative is None else as_perm(representative, degree)

    @classmethod
    def empty(cls, degree: int) -> "Coset":
        return cls(degree)

    @classmethod
    def of_group(cls, group: PermGroup) -> "Coset":
        return cls(group.degree, group, identity_perm(group.degree))

    @property
    def is_empty(self) -> bool:
        return self.subgroup is None

    def size(self) -> int:
        return 0 if self.is_empty else self.subgroup.order()

    def __len__(self) -> int:
        return self.size()

    def __bool__(self) -> bool:
        return not self.is_empty

    def __contains__(self, g: Perm) -> bool:
        if self.is_empty:
            return False
        return self.subgroup.contains(compose(np.asarray(g), inverse(self.representative)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Coset):
            return NotImplemented
        if self.is_empty or other.is_empty:
            return self.is_empty and other.is_empty
        return self.subgroup == other.subgroup and other.representative in self

    __hash__ = None

    def __repr__(self) -> str:
        if self.is_empty:
            return f"Coset(empty, degree={self.degree})"
        return f"Coset(size={self.size()}, rep=[{format_images(self.representative)}])"

    def right_multiply(self, x: Perm) -> "Coset":
        """This set multiplied on the right by x."""
        if self.is_empty:
            return self
        return Coset(self.degree, self.subgroup, compose(self.representative, x))

    def elements(self) -> Iterator[Perm]:
        if self.is_empty:
            return
        for g in self.subgroup.elements():
            yield compose(g, self.representative)


def point_transporter(P: PermGroup, x: int, y: int) -> Coset:
    """{g in P : x^g = y}."""
    chain = P.with_base([x]).chain
    entry = chain.transversals[0].get(int(y))
    if entry is None:
        return Coset.empty(P.degree)
    stabilizer = PermGroup(P.degree, [g for g, level in chain.strong if level >= 1])
    return Coset(P.degree, stabilizer, entry[0])


def coset_point_transporter(C: Coset, x: int, y: int) -> Coset:
    """{g in C : x^g = y} for a coset C = Q r."""
    if C.is_empty:
        return C
    target = int(inverse(C.representative)[y])
    return point_transporter(C.subgroup, x, target).right_multiply(C.representative)


def union_of_cosets(cosets: Sequence[Coset], degree: int) -> Coset:
    """Union of cosets known to form a single coset: <P_j, pi_j pi_1^-1> pi_1."""
    nonempty = [c for c in cosets if not c.is_empty]
    if not nonempty:
        return Coset.empty(degree)
    first = nonempty[0]
    if len(nonempty) == 1:
        return first
    first_inverse = inverse(first.representative)
    gens = []
    for c in nonempty:
        gens.extend(c.subgroup.generators)
        gens.append(compose(c.representative, first_inverse))
    return Coset(degree, PermGroup(degree, gens), first.representative)
