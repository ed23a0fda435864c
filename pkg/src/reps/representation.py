from __future__ import annotations

from functools import cached_property
from typing import Optional, Sequence

import numpy as np
from loguru import logger

from src.abelian.basis import AbelianBasis, HomocyclicDecomposition, abelian_basis
from src.abelian.matrices import HomMatrix, endo_to_matrix
from src.errors import NotAHomomorphismError, PreconditionError
from src.groups.cayley import IDENTITY, CayleyGroup, Subgroup
from src.groups.subgroups import is_complement, is_normal
from src.perm.perms import Perm, inverse


class Representation:
    """A homomorphism alpha: H -> Aut(A) for an abelian p-group A, given on H.generators.

    Images are block matrices acting on the right of coordinate row vectors, so
    alpha(gh) = alpha(g) @ alpha(h). The images of all elements of H are expanded on demand.
    """

    def __init__(
        self,
        H: CayleyGroup,
        decomposition: HomocyclicDecomposition,
        generator_images: Sequence[HomMatrix],
        validate: bool = True,
        embedding_A: Optional[np.ndarray] = None,
        embedding_H: Optional[np.ndarray] = None,
    ):
        self.H = H
        self.decomposition = decomposition
        self.generator_images = tuple(generator_images)
        if len(self.generator_images) != len(H.generators):
            raise PreconditionError(f"Expected {len(H.generators)} generator images, got {len(self.generator_images)}")
        self.embedding_A = embedding_A
        self.embedding_H = embedding_H
        if validate:
            for M in self.generator_images:
                if not M.is_automorphism():
                    raise NotAHomomorphismError("A generator image is not an automorphism of A")
            self.images

    @classmethod
    def trivial(cls, H: CayleyGroup, decomposition: HomocyclicDecomposition) -> "Representation":
        one = HomMatrix.identity(decomposition)
        return cls(H, decomposition, [one] * len(H.generators), validate=False)

    @classmethod
    def from_arrays(cls, H: CayleyGroup, orders: Sequence[int], arrays: Sequence[np.ndarray], validate: bool = True) -> "Representation":
        """A representation on the virtual module Z/n_1 + ... + Z/n_t."""
        decomposition = AbelianBasis.standard(orders).homocyclic()
        return cls(H, decomposition, [HomMatrix(decomposition, a) for a in arrays], validate=validate)

    def __repr__(self) -> str:
        return f"Representation(H={self.H!r}, A={self.module.orders})"

    @property
    def module(self) -> AbelianBasis:
        return self.decomposition.basis

    @property
    def p(self) -> int:
        return self.decomposition.p

    @property
    def rank(self) -> int:
        return self.decomposition.rank

    @property
    def is_elementary(self) -> bool:
        return all(n == self.p for n in self.module.orders)

    @cached_property
    def images(self) -> list[HomMatrix]:
        """images[h] = alpha(h) for every element h of H."""
        H = self.H
        result: list[Optional[HomMatrix]] = [None] * H.order
        result[IDENTITY] = HomMatrix.identity(self.decomposition)
        frontier = [IDENTITY]
        while frontier:
            nxt = []
            for x in frontier:
                for s, M in zip(H.generators, self.generator_images):
                    y = int(H.table[x, s])
                    value = result[x] @ M
                    if result[y] is None:
                        result[y] = value
                        nxt.append(y)
                    elif result[y] != value:
                        raise NotAHomomorphismError("Generator images violate a relation of H")
            frontier = nxt
        if any(M is None for M in result):
            raise PreconditionError("H.generators do not generate H")
        return result

    def image(self, h: int) -> HomMatrix:
        return self.images[h]

    @cached_property
    def kernel(self) -> Subgroup:
        one = HomMatrix.identity(self.decomposition)
        return Subgroup(self.H, [h for h, M in enumerate(self.images) if M == one])

    @property
    def is_trivial(self) -> bool:
        one = HomMatrix.identity(self.decomposition)
        return all(M == one for M in self.generator_images)

    @cached_property
    def traces(self) -> tuple[int, ...]:
        """Traces mod p of every alpha(h); a class function, equal for equivalent representations."""
        return tuple(int(np.trace(M.array)) % self.p for M in self.images)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Representation):
            return NotImplemented
        return (
            self.H.same_table(other.H)
            and self.decomposition == other.decomposition
            and all(a == b for a, b in zip(self.generator_images, other.generator_images))
        )

    __hash__ = None

    def act_by_autA(self, psi: HomMatrix) -> "Representation":
        """alpha^psi(h) = psi^-1 alpha(h) psi."""
        psi_inverse = psi.inverse()
        images = [psi_inverse @ M @ psi for M in self.generator_images]
        return Representation(self.H, self.decomposition, images, validate=False)

    def act_by_autH(self, phi: Perm) -> "Representation":
        """alpha^phi(h) = alpha(h^(phi^-1)), phi an automorphism of H on element indices."""
        phi_inverse = inverse(np.asarray(phi))
        images = [self.images[int(phi_inverse[s])] for s in self.H.generators]
        return Representation(self.H, self.decomposition, images, validate=False)

    def lambda_component(self, i: int) -> "Representation":
        """The induced action on A_i / pA_i, A_i the i-th homocyclic component."""
        e, m, _ = self.decomposition.components[i]
        target = AbelianBasis.standard([self.p] * m).homocyclic()
        images = [HomMatrix(target, M.lambda_map()[i]) for M in self.generator_images]
        return Representation(self.H, target, images, validate=False)

    def on_elements(self, h: int) -> np.ndarray:
        """alpha(h) as a permutation of the elements of A."""
        return self.images[h].to_permutation()


def conjugation_rep(G: CayleyGroup, A: Subgroup, H: Subgroup) -> Representation:
    """alpha(h): a -> h^-1 a h on a normal abelian p-subgroup A with complement H."""
    if not A.is_abelian:
        raise PreconditionError("The normal subgroup must be abelian")
    if not is_normal(G, A):
        raise PreconditionError("The abelian subgroup must be normal")
    if not is_complement(A, H):
        raise PreconditionError("H is not a complement of A")
    A_local, embed_A = A.as_group()
    H_local, embed_H = H.as_group()
    basis = abelian_basis(A_local)
    if len(set(basis.primes)) > 1:
        raise PreconditionError("The normal subgroup must be a p-group")
    decomposition = basis.homocyclic()
    position = A.local_positions()
    inv = G.inverse
    images = []
    for s in H_local.generators:
        h = int(embed_H[s])
        conjugated = G.table[G.table[inv[h], embed_A], h]
        images.append(endo_to_matrix(position[conjugated], decomposition, validate=False))
    rep = Representation(H_local, decomposition, images, embedding_A=embed_A, embedding_H=embed_H)
    logger.debug(f"Conjugation representation of H of order {H.order} on A of order {A.order}")
    return rep


def representation_from_perms(H: CayleyGroup, A: CayleyGroup, perms: Sequence[Perm]) -> Representation:
    """A representation given by automorphisms of A (as element permutations) for each H generator."""
    basis = abelian_basis(A)
    decomposition = basis.homocyclic()
    images = [endo_to_matrix(np.asarray(perm, dtype=np.intp), decomposition) for perm in perms]
    return Representation(H, decomposition, images)
