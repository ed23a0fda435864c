from __future__ import annotations

from typing import Optional

import numpy as np
from loguru import logger

from src.abelian.basis import abelian_basis
from src.config import get_settings
from src.errors import ResourceExhausted
from src.groups.cayley import CayleyGroup, Subgroup, closure_mask
from src.groups.subgroups import closure, embed, normal_closure


def normal_subgroups(G: CayleyGroup) -> list[Subgroup]:
    """Every normal subgroup, as joins of normal closures of conjugacy classes, ordered by size."""
    closures = []
    seen_closures: set[bytes] = set()
    for cls in G.conjugacy_classes:
        N = normal_closure(G, [int(cls[0])])
        key = N.elements.tobytes()
        if key not in seen_closures:
            seen_closures.add(key)
            closures.append(N)

    found: dict[bytes, Subgroup] = {G.trivial.elements.tobytes(): G.trivial}
    queue = [G.trivial]
    while queue:
        N = queue.pop()
        for C in closures:
            if C.issubset(N):
                continue
            gens = list(N.generators) + list(C.generators)
            joined = Subgroup(G, np.flatnonzero(closure_mask(G.table, gens)))
            key = joined.elements.tobytes()
            if key not in found:
                found[key] = joined
                queue.append(joined)
    return sorted(found.values(), key=lambda N: (N.order, N.elements.tolist()))


def _cyclic_factors(G: CayleyGroup) -> list[Subgroup]:
    basis = abelian_basis(G)
    return [closure(G, [g]) for g in basis.generators]


def _factorize(G: CayleyGroup) -> list[Subgroup]:
    if G.order == 1:
        return []
    if G.is_abelian:
        return _cyclic_factors(G)
    normals = normal_subgroups(G)
    for N in normals:
        if N.order in (1, G.order):
            continue
        wanted = G.order // N.order
        for M in normals:
            if M.order == wanted and (M.mask & N.mask).sum() == 1:
                N_local, embed_N = N.as_group()
                M_local, embed_M = M.as_group()
                return [embed(F, embed_N, G) for F in _factorize(N_local)] + [embed(F, embed_M, G) for F in _factorize(M_local)]
    return [G.whole]


def direct_factorization(G: CayleyGroup, max_order: Optional[int] = None) -> list[Subgroup]:
    """Directly indecomposable normal subgroups of G whose internal direct product is G."""
    max_order = get_settings().max_order if max_order is None else max_order
    if G.order > max_order:
        raise ResourceExhausted(f"Direct factorization is capped at order {max_order}, got {G.order}")
    factors = _factorize(G)
    logger.debug(f"{G!r} factors as orders {[F.order for F in factors]}")
    return factors


def factor_groups(G: CayleyGroup, max_order: Optional[int] = None) -> list[CayleyGroup]:
    return [F.as_group()[0] for F in direct_factorization(G, max_order)]
