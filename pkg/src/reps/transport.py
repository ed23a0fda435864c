from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from loguru import logger

from src.errors import InternalConsistencyError, PreconditionError
from src.groups.cayley import CayleyGroup
from src.perm.chain import PermGroup
from src.perm.coset import Coset
from src.perm.hom import TrackedHom
from src.perm.perms import inverse
from src.perm.transporter import GroupString, string_isomorphisms
from src.reps.modules import ClassRegistry, decompose
from src.reps.representation import Representation


@dataclass
class TransportInstance:
    """P <= Aut(H) acting on the elements of H, and two representations of H on the same module."""

    H: CayleyGroup
    P: PermGroup
    alpha: Representation
    beta: Representation

    def __post_init__(self):
        if self.P.degree != self.H.order:
            raise PreconditionError("P must act on the elements of H")
        if self.alpha.decomposition != self.beta.decomposition:
            raise PreconditionError("alpha and beta act on different modules")
        if self.alpha.rank and self.H.order % self.alpha.p == 0:
            raise PreconditionError(f"p = {self.alpha.p} divides |H| = {self.H.order}")
        for phi in self.P.generators:
            if not self.H.is_automorphism_perm(phi):
                raise PreconditionError("A generator of P is not an automorphism of H")


def _multiplicity_strings(omega: int, mult_alpha: dict[int, int], mult_beta: dict[int, int]) -> tuple[GroupString, GroupString]:
    """Nonzero multiplicities become letters 1.. in ascending order; multiplicity 0 is the last letter."""
    values = sorted(set(mult_alpha.values()) | set(mult_beta.values()))
    letter = {m: i + 1 for i, m in enumerate(values)}
    background = len(values) + 1

    def string(mult: dict[int, int]) -> GroupString:
        return GroupString([letter.get(mult.get(c, 0), background) for c in range(omega)], background)

    return string(mult_alpha), string(mult_beta)


def transport_elementary(inst: TransportInstance) -> Coset:
    """{phi in P : alpha^phi ~ beta} for an elementary abelian module."""
    H, P, alpha, beta = inst.H, inst.P, inst.alpha, inst.beta
    if not alpha.is_elementary:
        raise PreconditionError("transport_elementary needs an elementary abelian module")
    if alpha.rank == 0:
        return Coset.of_group(P)

    registry = ClassRegistry()
    mult_alpha = decompose(alpha, registry).multiplicities()
    mult_beta = decompose(beta, registry).multiplicities()

    # close the classes under P; action[g][c] = class of rho_c^phi_g
    actions: list[list[int]] = [[] for _ in P.generators]
    c = 0
    while c < len(registry):
        rho = registry.representatives[c]
        for g, phi in enumerate(P.generators):
            actions[g].append(registry.identify(rho.act_by_autH(phi)))
        if len(registry) > H.order:
            raise InternalConsistencyError(f"{len(registry)} inequivalent irreducibles exceed |H| = {H.order}")
        c += 1
    omega = len(registry)
    logger.debug(f"Transport on {omega} constituent classes, multiplicities {mult_alpha} -> {mult_beta}")

    if sorted(mult_alpha.values()) != sorted(mult_beta.values()):
        return Coset.empty(P.degree)
    if not P.generators:
        return Coset.of_group(P) if mult_alpha == mult_beta else Coset.empty(P.degree)

    f = TrackedHom(P, [np.asarray(a) for a in actions], omega)
    f_alpha, f_beta = _multiplicity_strings(omega, mult_alpha, mult_beta)
    matches = string_isomorphisms(f.image_group, f_alpha, f_beta)
    if matches.is_empty:
        return Coset.empty(P.degree)
    generators = list(f.kernel.generators) + [f.preimage(q) for q in matches.subgroup.generators]
    return Coset(P.degree, PermGroup(P.degree, generators), f.preimage(matches.representative))


def transport_general(inst: TransportInstance) -> Coset:
    """{phi in P : alpha^phi ~ beta} for an abelian p-module, one homocyclic component at a time."""
    H, alpha, beta = inst.H, inst.alpha, inst.beta
    current = Coset.of_group(inst.P)
    for i in range(len(alpha.decomposition.components)):
        Q, x = current.subgroup, current.representative
        alpha_i = alpha.lambda_component(i)
        beta_i = beta.lambda_component(i).act_by_autH(inverse(x))
        found = transport_elementary(TransportInstance(H, Q, alpha_i, beta_i))
        current = found.right_multiply(x)
        logger.debug(f"Transport component {i}: {current!r}")
        if current.is_empty:
            break
    return current
