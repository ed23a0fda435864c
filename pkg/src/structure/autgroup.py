"""Aut(G) for A-groups: recursion along characteristic complements, lifted through the module action."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from loguru import logger

from src.abelian.basis import abelian_basis
from src.abelian.matrices import automorphism_permutations
from src.config import Settings, get_settings
from src.errors import InternalConsistencyError, NotAHomomorphismError, PreconditionError
from src.groups.cayley import CayleyGroup
from src.groups.subgroups import is_agroup, quotient, solvable_radical, subgroup_generated_by_p_elements
from src.perm.chain import PermGroup
from src.perm.hom import TrackedHom, inner_automorphisms
from src.perm.perms import inverse
from src.reps.intertwiner import CentralizerRing, module_isomorphism, unit_group
from src.reps.representation import Representation, conjugation_rep
from src.reps.transport import TransportInstance, transport_general
from src.structure.bruteforce import aut_bruteforce
from src.structure.complements import CharComplement, characteristic_complement

METHODS = ("trivial", "abelian-base", "brute-force-base", "recursive")


@dataclass
class AutResult:
    group: CayleyGroup
    aut: PermGroup
    method: str
    levels: list[str] = field(default_factory=list)
    exact: bool = True

    def order(self) -> int:
        return self.aut.order()


@dataclass
class LiftedAut:
    aut: PermGroup
    pairs: list[tuple[np.ndarray, np.ndarray]]
    exact: bool


def _quotient_representation(alpha: Representation, H_bar: CayleyGroup, labels: np.ndarray) -> Representation:
    """alpha on H / K for K inside the kernel of alpha."""
    preimages = np.zeros(H_bar.order, dtype=np.intp)
    preimages[labels[::-1]] = np.arange(labels.size)[::-1]
    images = [alpha.image(int(preimages[s])) for s in H_bar.generators]
    return Representation(H_bar, alpha.decomposition, images)


def _induced_on_quotient(eta: np.ndarray, labels: np.ndarray, order: int) -> np.ndarray:
    """The automorphism of H / K induced by eta, K characteristic."""
    induced = np.empty(order, dtype=np.intp)
    induced[labels] = labels[np.asarray(eta, dtype=np.intp)]
    return induced


def _assemble(G: CayleyGroup, embed_A: np.ndarray, embed_H: np.ndarray, nu: np.ndarray, eta: np.ndarray) -> np.ndarray:
    """The map a h -> nu(a) eta(h) on G."""
    table = G.table
    products = table[embed_A[:, None], embed_H[None, :]]
    images = table[embed_A[np.asarray(nu, dtype=np.intp)][:, None], embed_H[np.asarray(eta, dtype=np.intp)][None, :]]
    phi = np.empty(G.order, dtype=np.intp)
    phi[products.ravel()] = images.ravel()
    return phi


def lift_aut(G: CayleyGroup, cc: CharComplement, autH: PermGroup, settings: Optional[Settings] = None) -> LiftedAut:
    """Generators of Aut(G) from Aut(H), H a characteristic complement of the abelian p-subgroup A."""
    settings = settings or get_settings()
    alpha = conjugation_rep(G, cc.A, cc.H)
    H = alpha.H
    if autH.degree != H.order:
        raise PreconditionError(f"Aut(H) acts on {autH.degree} points, H has order {H.order}")
    p = cc.p if cc.p is not None else alpha.p

    K = subgroup_generated_by_p_elements(H, p)
    H_bar, projection = quotient(H, K)
    labels = projection.images
    alpha_bar = _quotient_representation(alpha, H_bar, labels)
    to_bar = TrackedHom(autH, [_induced_on_quotient(eta, labels, H_bar.order) for eta in autH.generators], H_bar.order)

    stable = transport_general(TransportInstance(H_bar, to_bar.image_group, alpha_bar, alpha_bar))
    if stable.is_empty:
        raise InternalConsistencyError("The identity does not transport a representation to itself")
    S_H = list(to_bar.kernel.generators) + [to_bar.preimage(g) for g in stable.subgroup.generators]
    logger.debug(f"Lifting through |A|={cc.A.order}, |H|={H.order}, |K|={K.order}: {len(S_H)} stabilizer generators")

    identity_H = np.arange(H.order)
    units = unit_group(CentralizerRing(alpha), settings=settings)
    pairs = [(M.to_permutation(), identity_H) for M in units.generators]
    for eta in S_H:
        nu = module_isomorphism(alpha, alpha.act_by_autH(inverse(eta)), settings=settings)
        if nu is None:
            raise InternalConsistencyError("A transported automorphism of H has no matching automorphism of A")
        pairs.append((nu.to_permutation(), np.asarray(eta, dtype=np.intp)))

    generators = [_assemble(G, alpha.embedding_A, alpha.embedding_H, nu, eta) for nu, eta in pairs]
    for phi in generators:
        if not G.is_automorphism_perm(phi):
            raise NotAHomomorphismError("An assembled map is not an automorphism of G")
    generators.extend(inner_automorphisms(G))
    return LiftedAut(PermGroup(G.order, generators), pairs, units.exact)


def _abelian_aut(G: CayleyGroup) -> PermGroup:
    return PermGroup(G.order, automorphism_permutations(abelian_basis(G)))


def aut_agroup(G: CayleyGroup, settings: Optional[Settings] = None) -> AutResult:
    settings = settings or get_settings()
    if not is_agroup(G):
        raise PreconditionError(f"{G!r} is not an A-group")
    return _aut_agroup(G, settings)


def _aut_agroup(G: CayleyGroup, settings: Settings) -> AutResult:
    if G.order == 1:
        return AutResult(G, PermGroup(1), "trivial", ["trivial"])
    if G.is_abelian:
        return AutResult(G, _abelian_aut(G), "abelian-base", ["abelian-base"])
    if solvable_radical(G).is_trivial:
        return AutResult(G, aut_bruteforce(G, settings.oracle_budget), "brute-force-base", ["brute-force-base"])

    cc = characteristic_complement(G)
    H_local, _ = cc.H.as_group()
    if H_local.order >= G.order:
        raise InternalConsistencyError("Complement is not smaller than the group")
    inner = _aut_agroup(H_local, settings)
    lifted = lift_aut(G, cc, inner.aut, settings)
    result = AutResult(G, lifted.aut, "recursive", ["recursive"] + inner.levels, inner.exact and lifted.exact)
    logger.debug(f"Aut({G!r}) via {cc!r}: order {result.order()}")
    return result
