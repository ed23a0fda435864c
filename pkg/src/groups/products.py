from typing import Mapping

import numpy as np

from src.errors import NotAHomomorphismError, PreconditionError
from src.groups.cayley import IDENTITY, CayleyGroup


def direct_product(A: CayleyGroup, B: CayleyGroup, name: str = "") -> tuple[CayleyGroup, np.ndarray, np.ndarray]:
    """A x B with (a, b) stored at index a*|B| + b; returns the group and both embeddings."""
    nA, nB = A.order, B.order
    n = nA * nB
    a_idx, b_idx = np.divmod(np.arange(n), nB)
    table = np.empty((n, n), dtype=np.intp)
    for i in range(n):
        table[i] = A.table[a_idx[i], a_idx] * nB + B.table[b_idx[i], b_idx]
    gens = [int(a) * nB for a in A.generators] + [int(b) for b in B.generators]
    G = CayleyGroup(table, name=name or f"({A.name} x {B.name})", generators=gens, validate=False)
    return G, np.arange(nA) * nB, np.arange(nB)


def expand_action(A: CayleyGroup, H: CayleyGroup, actions: Mapping[int, np.ndarray]) -> np.ndarray:
    """Extend generator automorphisms of A to an array act[h] (a right action of H on A)."""
    for s, perm in actions.items():
        if not A.is_automorphism_perm(perm):
            raise NotAHomomorphismError(f"Action of generator {s} is not an automorphism of A")
    act = np.full((H.order, A.order), -1, dtype=np.intp)
    act[IDENTITY] = np.arange(A.order)
    seen = np.zeros(H.order, dtype=bool)
    seen[IDENTITY] = True
    frontier = [IDENTITY]
    while frontier:
        nxt = []
        for x in frontier:
            for s, perm in actions.items():
                y = int(H.table[x, s])
                image = np.asarray(perm, dtype=np.intp)[act[x]]
                if not seen[y]:
                    seen[y] = True
                    act[y] = image
                    nxt.append(y)
                elif not np.array_equal(act[y], image):
                    raise NotAHomomorphismError("Action does not define a homomorphism H -> Aut(A)")
        frontier = nxt
    if not seen.all():
        raise PreconditionError("Acting elements do not generate H")
    return act


def semidirect_product(
    A: CayleyGroup, H: CayleyGroup, actions: Mapping[int, np.ndarray], name: str = ""
) -> tuple[CayleyGroup, np.ndarray, np.ndarray]:
    """A x| H with (a,h)(b,k) = (a + b^(alpha(h)^-1), hk), stored at index a*|H| + h.

    Conjugation h^-1 a h of the embedded copies equals a^alpha(h).
    """
    if not A.is_abelian:
        raise PreconditionError("The normal factor of a semidirect product must be abelian")
    act = expand_action(A, H, actions)
    inverse_act = np.argsort(act, axis=1)
    nA, nH = A.order, H.order
    n = nA * nH
    a_idx, h_idx = np.divmod(np.arange(n), nH)
    table = np.empty((n, n), dtype=np.intp)
    for i in range(n):
        a, h = a_idx[i], h_idx[i]
        table[i] = A.table[a, inverse_act[h, a_idx]] * nH + H.table[h, h_idx]
    gens = [int(a) * nH for a in A.generators] + [int(h) for h in H.generators]
    G = CayleyGroup(table, name=name, generators=gens, validate=False)
    return G, np.arange(nA) * nH, np.arange(nH)
