"""Complements to abelian normal subgroups: Schur-Zassenhaus, Hall subgroups and characteristic complements."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Iterable, Optional

import numpy as np
from loguru import logger

from src.errors import InternalConsistencyError, PreconditionError
from src.groups.cayley import IDENTITY, CayleyGroup, Subgroup, closure_mask
from src.groups.numbers import pi_part, prime_divisors
from src.groups.subgroups import (
    centralizer,
    closure,
    derived_series,
    derived_subgroup,
    embed,
    intersection,
    is_complement,
    is_normal,
    is_solvable,
    normalizer,
    p_elements,
    preimage,
    quotient,
    restrict,
    solvable_radical,
)


@dataclass
class CharComplement:
    """A characteristic abelian p-subgroup A of G together with a complement H."""

    G: CayleyGroup
    A: Subgroup
    H: Subgroup
    p: Optional[int]

    def __post_init__(self):
        if not is_complement(self.A, self.H):
            raise InternalConsistencyError(f"H of order {self.H.order} does not complement A of order {self.A.order}")

    def __repr__(self) -> str:
        return f"CharComplement(|G|={self.G.order}, |A|={self.A.order}, |H|={self.H.order}, p={self.p})"


def schur_zassenhaus(G: CayleyGroup, A: Subgroup) -> Subgroup:
    """A complement to an abelian normal subgroup A with gcd(|A|, |G:A|) = 1, by averaging the cocycle."""
    if not A.is_abelian or not is_normal(G, A):
        raise PreconditionError("Schur-Zassenhaus needs an abelian normal subgroup")
    index = G.order // A.order
    if gcd(A.order, index) != 1:
        raise PreconditionError(f"|A| = {A.order} and |G:A| = {index} are not coprime")
    if A.is_trivial:
        return G.whole
    Q, projection = quotient(G, A)
    labels = projection.images
    transversal = np.zeros(Q.order, dtype=np.intp)
    assigned = np.zeros(Q.order, dtype=bool)
    for g in range(G.order):
        if not assigned[labels[g]]:
            assigned[labels[g]] = True
            transversal[labels[g]] = g

    table, inv = G.table, G.inverse
    t = transversal
    # f(q, r) = t(q) t(r) t(qr)^-1, an element of A
    cocycle = table[table[t[:, None], t[None, :]], inv[t[Q.table]]]
    averaged = np.full(Q.order, IDENTITY, dtype=np.intp)
    for r in range(Q.order):
        averaged = table[averaged, cocycle[:, r]]
    exponent = int(G.element_orders[A.elements].max())
    correction = G.power_map(-pow(index, -1, exponent))[averaged]
    elements = table[correction, t]

    mask = closure_mask(table, elements)
    if int(mask.sum()) != Q.order or (mask & A.mask).sum() != 1:
        raise InternalConsistencyError("Averaged transversal is not a complement")
    return Subgroup(G, np.flatnonzero(mask))


def _hall(X: CayleyGroup, primes: frozenset[int]) -> Subgroup:
    target = pi_part(X.order, primes)
    if target == X.order:
        return X.whole
    if target == 1:
        return X.trivial
    series = derived_series(X)
    last = series[-2]
    p = prime_divisors(last.order)[0]
    M = Subgroup(X, p_elements(X, p, within=last))
    Q, projection = quotient(X, M)
    K = preimage(projection, _hall(Q, primes))
    if p in primes:
        return K
    K_local, embedding = K.as_group()
    return embed(schur_zassenhaus(K_local, restrict(M, K)), embedding, X)


def hall_subgroup(G: CayleyGroup, N: Subgroup, primes: Iterable[int]) -> Subgroup:
    """A Hall pi-subgroup of the solvable subgroup N, built up through a chief-like series of N."""
    if not is_solvable(N):
        raise PreconditionError("Hall subgroups are computed in solvable groups only")
    N_local, embedding = N.as_group()
    result = embed(_hall(N_local, frozenset(int(p) for p in primes)), embedding, G)
    logger.debug(f"Hall subgroup for primes {sorted(primes)} in N of order {N.order}: order {result.order}")
    return result


def _complement(G: CayleyGroup, A: Subgroup) -> Subgroup:
    """A complement of the abelian solvable radical A of an A-group G."""
    if A.order == G.order:
        return G.trivial
    primes = prime_divisors(A.order)
    p = primes[0]
    A_p = Subgroup(G, p_elements(G, p, within=A))
    if A_p.order != A.order:
        Q, projection = quotient(G, A_p)
        A_bar = Subgroup(Q, np.unique(projection.images[A.elements]))
        L = preimage(projection, _complement(Q, A_bar))
        L_local, embedding = L.as_group()
        return embed(_complement(L_local, restrict(A_p, L)), embedding, G)

    C = centralizer(G, A)
    if C.order == A.order:
        return schur_zassenhaus(G, A)
    S = derived_subgroup(G, C)
    if S.order * A.order != C.order or (S.mask & A.mask).sum() != 1:
        raise InternalConsistencyError("Centralizer of the radical is not A x [C, C]; G is not an A-group")
    Q, projection = quotient(G, S)
    A_bar = Subgroup(Q, np.unique(projection.images[A.elements]))
    return preimage(projection, _complement(Q, A_bar))


def complement_abelian_radical(G: CayleyGroup) -> CharComplement:
    radical = solvable_radical(G)
    if radical.is_trivial:
        raise PreconditionError("The solvable radical is trivial")
    if not radical.is_abelian:
        raise PreconditionError("The solvable radical is not abelian")
    H = _complement(G, radical)
    primes = prime_divisors(radical.order)
    return CharComplement(G, radical, H, primes[0] if len(primes) == 1 else None)


def split_sylow(cc: CharComplement) -> CharComplement:
    """(A_p, A_p' H) for the smallest prime p dividing |A|."""
    G, A = cc.G, cc.A
    p = prime_divisors(A.order)[0]
    A_p = Subgroup(G, p_elements(G, p, within=A))
    if A_p.order == A.order:
        return CharComplement(G, A, cc.H, p)
    A_rest = Subgroup(G, A.elements[G.element_orders[A.elements] % p != 0])
    return CharComplement(G, A_p, closure(G, list(A_rest.generators) + list(cc.H.generators)), p)


def sylow_system(G: CayleyGroup, N: Subgroup) -> list[Subgroup]:
    """P_i = the intersection of Hall p_j'-subgroups N_j, j != i; pairwise permutable Sylow subgroups of N."""
    primes = prime_divisors(N.order)
    if len(primes) == 1:
        return [N]
    halls = [hall_subgroup(G, N, [q for q in primes if q != p]) for p in primes]
    return [intersection(*[halls[j] for j in range(len(primes)) if j != i]) for i in range(len(primes))]


def characteristic_complement(G: CayleyGroup) -> CharComplement:
    radical = solvable_radical(G)
    if radical.is_trivial:
        raise PreconditionError("characteristic_complement needs a nontrivial solvable radical")
    if radical.is_abelian:
        cc = split_sylow(complement_abelian_radical(G))
        logger.debug(f"Abelian radical of order {radical.order}: {cc!r}")
        return cc

    series = derived_series(radical)
    N = series[-3]
    A = series[-2]
    system = sylow_system(G, N)
    H = reduce(lambda acc, P: intersection(acc, normalizer(G, P)), system, G.whole)
    cc = split_sylow(CharComplement(G, A, H, None))
    logger.debug(f"Nonabelian radical of order {radical.order}: system normalizer route gives {cc!r}")
    return cc
