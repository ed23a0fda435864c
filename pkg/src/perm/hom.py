from __future__ import annotations

from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from src.errors import NotAHomomorphismError, NotInImageError, PreconditionError
from src.groups.cayley import CayleyGroup
from src.perm.chain import PermGroup
from src.perm.perms import Perm, as_perm, identity_perm, inverse, is_identity


class TrackedHom:
    """A homomorphism from a permutation group on Omega to Sym(Pi), given on the source generators.

    Kernels and preimages are read off the graph group {(g, f(g))} acting on the disjoint
    union of Omega and Pi, with Pi relabelled to degree..degree+|Pi|-1.
    """

    def __init__(self, source: PermGroup, images: Sequence[Perm], image_degree: int):
        if len(images) != len(source.generators):
            raise PreconditionError(f"Expected {len(source.generators)} images, got {len(images)}")
        self.source = source
        self.image_degree = int(image_degree)
        self.images = tuple(as_perm(h, self.image_degree) for h in images)

    def _graph_generators(self) -> list[np.ndarray]:
        n1 = self.source.degree
        return [
            np.concatenate([g.astype(np.int32), h.astype(np.int32) + n1])
            for g, h in zip(self.source.generators, self.images)
        ]

    @cached_property
    def image_group(self) -> PermGroup:
        return PermGroup(self.image_degree, self.images)

    @cached_property
    def _image_first(self) -> tuple[PermGroup, int]:
        n1 = self.source.degree
        prefix = [b + n1 for b in self.image_group.base]
        graph = PermGroup(n1 + self.image_degree, self._graph_generators(), base_prefix=prefix)
        if graph.order() != self.source.order():
            raise NotAHomomorphismError("Generator images do not extend to a homomorphism")
        return graph, len(prefix)

    @cached_property
    def _source_first(self) -> tuple[PermGroup, int]:
        prefix = list(self.source.base)
        graph = PermGroup(self.source.degree + self.image_degree, self._graph_generators(), base_prefix=prefix)
        return graph, len(prefix)

    @cached_property
    def kernel(self) -> PermGroup:
        graph, depth = self._image_first
        n1 = self.source.degree
        return PermGroup(n1, [g[:n1] for g, level in graph.chain.strong if level >= depth])

    def preimage(self, h: Perm) -> Perm:
        """Some g in the source with f(g) = h."""
        graph, depth = self._image_first
        n1 = self.source.degree
        x = np.concatenate([identity_perm(n1).astype(np.int32), np.asarray(h, dtype=np.int32) + n1])
        residue = self._sift_prefix(graph, x, depth)
        if residue is None or not is_identity(residue[n1:] - n1):
            raise NotInImageError("Permutation is not in the image of the homomorphism")
        return inverse(residue[:n1]).astype(identity_perm(n1).dtype)

    def __call__(self, g: Perm) -> Perm:
        graph, depth = self._source_first
        n1 = self.source.degree
        x = np.concatenate([np.asarray(g, dtype=np.int32), np.arange(n1, n1 + self.image_degree, dtype=np.int32)])
        residue = self._sift_prefix(graph, x, depth)
        if residue is None or not is_identity(residue[:n1]):
            raise NotInImageError("Permutation is not in the source group")
        return inverse(residue[n1:] - n1).astype(identity_perm(self.image_degree).dtype)

    @staticmethod
    def _sift_prefix(graph: PermGroup, x: np.ndarray, depth: int) -> Optional[np.ndarray]:
        chain = graph.chain
        for level in range(depth):
            entry = chain.transversals[level].get(int(x[chain.base[level]]))
            if entry is None:
                return None
            x = entry[1][x]
        return x


def kernel_and_preimages(f: TrackedHom) -> tuple[PermGroup, callable]:
    return f.kernel, f.preimage


def regular_permgroup(G: CayleyGroup, generators: Optional[Sequence[int]] = None) -> PermGroup:
    """G acting on itself by right multiplication."""
    gens = G.generators if generators is None else generators
    return PermGroup(G.order, [G.table[:, g] for g in gens])


def automorphism_permgroup(G: CayleyGroup, perms: Sequence[Perm], validate: bool = True) -> PermGroup:
    """A group of automorphisms of G as permutations of its elements."""
    if validate:
        for perm in perms:
            if not G.is_automorphism_perm(perm):
                raise NotAHomomorphismError("Generator is not an automorphism of the group")
    return PermGroup(G.order, list(perms))


def inner_automorphisms(G: CayleyGroup) -> list[Perm]:
    return [as_perm(G.inner_automorphism(x), G.order) for x in G.generators]
