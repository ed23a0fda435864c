from typing import Iterable, Optional, Union

import numpy as np
from loguru import logger

from src.errors import InternalConsistencyError, PreconditionError
from src.groups.cayley import IDENTITY, CayleyGroup, GroupHom, Subgroup, closure_mask
from src.groups.numbers import p_part, prime_divisors, require_prime

GroupLike = Union[CayleyGroup, Subgroup]


def as_subgroup(X: GroupLike) -> Subgroup:
    return X.whole if isinstance(X, CayleyGroup) else X


def closure(G: CayleyGroup, S: Iterable[int]) -> Subgroup:
    """<S> with S kept as the generating set."""
    S = [int(s) for s in S]
    for s in S:
        if not 0 <= s < G.order:
            raise PreconditionError(f"Element index {s} out of range for group of order {G.order}")
    return Subgroup(G, np.flatnonzero(closure_mask(G.table, S)), S)


def join(G: CayleyGroup, *subgroups: Subgroup) -> Subgroup:
    gens = [g for H in subgroups for g in H.generators]
    return closure(G, gens)


def intersection(*subgroups: Subgroup) -> Subgroup:
    G = subgroups[0].parent
    mask = np.logical_and.reduce([H.mask for H in subgroups])
    return Subgroup(G, np.flatnonzero(mask))


def centralizer(G: CayleyGroup, X: Union[Subgroup, Iterable[int]]) -> Subgroup:
    xs = np.asarray(X.generators if isinstance(X, Subgroup) else list(X), dtype=np.intp)
    if xs.size == 0:
        return G.whole
    mask = (G.table[:, xs] == G.table[xs, :].T).all(axis=1)
    return Subgroup(G, np.flatnonzero(mask))


def centre(G: CayleyGroup) -> Subgroup:
    return centralizer(G, G.generators)


def _conjugates(G: CayleyGroup, xs: np.ndarray, gs: np.ndarray) -> np.ndarray:
    """Array [i, j] = xs[j]^gs[i]."""
    return G.table[G.table[np.ix_(G.inverse[gs], xs)], gs[:, None]]


def normalizer(G: CayleyGroup, H: Subgroup, within: Optional[Subgroup] = None) -> Subgroup:
    gens = np.asarray(H.generators, dtype=np.intp)
    candidates = within.elements if within is not None else np.arange(G.order)
    if gens.size == 0:
        return Subgroup(G, candidates)
    ok = H.mask[_conjugates(G, gens, candidates)].all(axis=1)
    return Subgroup(G, candidates[ok])


def is_normal(G: CayleyGroup, N: Subgroup, within: Optional[Subgroup] = None) -> bool:
    ambient = np.asarray((within.generators if within is not None else G.generators), dtype=np.intp)
    gens = np.asarray(N.generators, dtype=np.intp)
    if ambient.size == 0 or gens.size == 0:
        return True
    return bool(N.mask[_conjugates(G, gens, ambient)].all())


def normal_closure(G: CayleyGroup, X: Iterable[int], within: Optional[Subgroup] = None) -> Subgroup:
    ambient = np.asarray((within.generators if within is not None else G.generators), dtype=np.intp)
    gens = [int(x) for x in X if int(x) != IDENTITY]
    mask = closure_mask(G.table, gens)
    queue = list(gens)
    while queue and ambient.size:
        x = queue.pop()
        for y in G.table[G.table[G.inverse[ambient], x], ambient]:
            if not mask[y]:
                gens.append(int(y))
                queue.append(int(y))
                mask = closure_mask(G.table, gens)
    return Subgroup(G, np.flatnonzero(mask), gens)


def derived_subgroup(G: CayleyGroup, S: Optional[Subgroup] = None) -> Subgroup:
    S = S if S is not None else G.whole
    gens = S.generators
    commutators = {G.commutator(a, b) for i, a in enumerate(gens) for b in gens[i + 1:]}
    commutators.discard(IDENTITY)
    return normal_closure(G, sorted(commutators), within=S)


def derived_series(X: GroupLike) -> list[Subgroup]:
    """S, [S,S], ... ending at the trivial group, or repeating the stable term once."""
    S = as_subgroup(X)
    series = [S]
    while not series[-1].is_trivial:
        D = derived_subgroup(S.parent, series[-1])
        series.append(D)
        if D.order == series[-2].order:
            break
    return series


def is_solvable(X: GroupLike) -> bool:
    return derived_series(X)[-1].is_trivial


def solvable_radical(G: CayleyGroup) -> Subgroup:
    if is_solvable(G):
        return G.whole
    radical = G.trivial
    for cls in G.conjugacy_classes:
        x = int(cls[0])
        if radical.mask[x]:
            continue
        N = normal_closure(G, [x])
        if is_solvable(N):
            radical = closure(G, list(radical.generators) + list(N.generators))
    logger.debug(f"Solvable radical of {G!r} has order {radical.order}")
    return radical


def p_elements(G: CayleyGroup, p: int, within: Optional[Subgroup] = None) -> np.ndarray:
    """Elements of p-power order (identity included), ascending."""
    orders = G.element_orders.copy()
    while True:
        divisible = orders % p == 0
        if not divisible.any():
            break
        orders[divisible] //= p
    mask = orders == 1
    if within is not None:
        mask &= within.mask
    return np.flatnonzero(mask)


def subgroup_generated_by_p_elements(G: CayleyGroup, p: int, within: Optional[Subgroup] = None) -> Subgroup:
    elements = p_elements(G, p, within)
    return Subgroup(G, np.flatnonzero(closure_mask(G.table, elements)))


def sylow_subgroup(G: CayleyGroup, p: int) -> Subgroup:
    """Sylow p-subgroup by normalizer climbing from the trivial subgroup."""
    require_prime(p)
    target = p_part(G.order, p)
    powers = G.power_map(p)
    P = G.trivial
    while P.order < target:
        N = normalizer(G, P)
        outside = N.elements[~P.mask[N.elements]]
        candidates = outside[P.mask[powers[outside]]]
        if candidates.size == 0:
            raise InternalConsistencyError(f"Normalizer climbing stalled at order {P.order} for p={p}")
        P = closure(G, list(P.generators) + [int(candidates[0])])
    return P


def is_agroup(G: CayleyGroup) -> bool:
    return all(sylow_subgroup(G, p).is_abelian for p in prime_divisors(G.order))


def quotient(G: CayleyGroup, N: Subgroup) -> tuple[CayleyGroup, GroupHom]:
    if not is_normal(G, N):
        raise PreconditionError("Quotient requires a normal subgroup")
    labels = np.full(G.order, -1, dtype=np.intp)
    reps = []
    for g in range(G.order):
        if labels[g] < 0:
            labels[G.table[g, N.elements]] = len(reps)
            reps.append(g)
    reps = np.asarray(reps, dtype=np.intp)
    table = labels[G.table[np.ix_(reps, reps)]]
    gens = list(dict.fromkeys(int(labels[g]) for g in G.generators if labels[g] != IDENTITY))
    Q = CayleyGroup(table, name=f"{G.name}/{N.order}" if G.name else "", generators=gens, validate=False)
    return Q, GroupHom(G, Q, labels, validate=False)


def preimage(projection: GroupHom, K: Subgroup) -> Subgroup:
    return Subgroup(projection.source, np.flatnonzero(K.mask[projection.images]))


def embed(sub: Subgroup, embedding: np.ndarray, parent: CayleyGroup) -> Subgroup:
    """Push a subgroup of a standalone group back into the parent it was cut from."""
    gens = [int(embedding[g]) for g in sub.generators]
    return Subgroup(parent, embedding[sub.elements], gens)


def restrict(sub: Subgroup, container: Subgroup) -> Subgroup:
    """`sub` (inside container's parent) expressed inside container.as_group()."""
    local, _ = container.as_group()
    position = container.local_positions()
    if (position[sub.elements] < 0).any():
        raise PreconditionError("Subgroup is not contained in the container")
    return Subgroup(local, position[sub.elements], [int(position[g]) for g in sub.generators])


def is_complement(A: Subgroup, H: Subgroup) -> bool:
    return bool((A.mask & H.mask).sum() == 1 and A.order * H.order == A.parent.order)
