from __future__ import annotations

from itertools import combinations
from typing import Optional, Sequence, Union

import numpy as np
from loguru import logger

from src.config import get_settings
from src.errors import PreconditionError, ResourceExhausted
from src.perm.chain import PermGroup
from src.perm.coset import Coset, coset_point_transporter, union_of_cosets
from src.perm.perms import Perm


class GroupString:
    """A string on points 0..domain-1 over the alphabet 1..alphabet_size."""

    def __init__(self, letters: Sequence[int], alphabet_size: Optional[int] = None):
        self.letters = np.asarray(letters, dtype=np.int64)
        self.alphabet_size = int(alphabet_size if alphabet_size is not None else (self.letters.max() if self.letters.size else 1))
        if self.letters.size and (self.letters.min() < 1 or self.letters.max() > self.alphabet_size):
            raise PreconditionError(f"Letters must lie in 1..{self.alphabet_size}")

    @property
    def domain(self) -> int:
        return int(self.letters.size)

    def level_set(self, letter: int) -> list[int]:
        return [int(x) for x in np.flatnonzero(self.letters == letter)]

    def act(self, pi: Perm) -> "GroupString":
        """f^pi(x) = f(x^(pi^-1))."""
        moved = np.empty_like(self.letters)
        moved[np.asarray(pi, dtype=np.intp)] = self.letters
        return GroupString(moved, self.alphabet_size)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupString):
            return NotImplemented
        return self.alphabet_size == other.alphabet_size and np.array_equal(self.letters, other.letters)

    __hash__ = None

    def __repr__(self) -> str:
        return f"GroupString({self.letters.tolist()}, l={self.alphabet_size})"


def _as_coset(P: Union[PermGroup, Coset]) -> Coset:
    return P if isinstance(P, Coset) else Coset.of_group(P)


def subset_transporter(P: Union[PermGroup, Coset], A: Sequence[int], B: Sequence[int], cap: Optional[int] = None) -> Coset:
    """{g in P : A^g = B} by dynamic programming over the subsets of B.

    P may itself be a coset Q r; the answer is then the transporter inside that coset.
    """
    start = _as_coset(P)
    degree = start.degree
    A = list(dict.fromkeys(int(a) for a in A))
    B = sorted(set(int(b) for b in B))
    if len(A) != len(B) or start.is_empty:
        return Coset.empty(degree)
    cap = get_settings().subset_cap if cap is None else cap
    if len(A) > cap:
        raise ResourceExhausted(f"Subset transporter on {len(A)} points exceeds the cap of {cap}")

    # layer[mask] = {g in P : A_i^g = C} where C is the set of B-points in mask
    layer: dict[int, Coset] = {0: start}
    for i, x in enumerate(A, start=1):
        nxt: dict[int, Coset] = {}
        for picked in combinations(range(len(B)), i):
            mask = sum(1 << j for j in picked)
            pieces = []
            for j in picked:
                previous = layer.get(mask ^ (1 << j))
                if previous is not None and not previous.is_empty:
                    pieces.append(coset_point_transporter(previous, x, B[j]))
            merged = union_of_cosets(pieces, degree)
            if not merged.is_empty:
                nxt[mask] = merged
        layer = nxt
        logger.debug(f"Subset transporter layer {i}: {len(layer)} nonempty entries")
        if not layer:
            return Coset.empty(degree)
    return layer.get((1 << len(B)) - 1, Coset.empty(degree))


def string_isomorphisms(P: Union[PermGroup, Coset], f1: GroupString, f2: GroupString, cap: Optional[int] = None) -> Coset:
    """{g in P : f1^g = f2}; the last letter is the background letter."""
    if f1.alphabet_size != f2.alphabet_size or f1.domain != f2.domain:
        raise PreconditionError("Strings must share the domain and the alphabet")
    cap = get_settings().subset_cap if cap is None else cap
    background = f1.alphabet_size
    for f in (f1, f2):
        if int((f.letters != background).sum()) > cap:
            raise ResourceExhausted(f"String has more than {cap} non-background points")
    current = _as_coset(P)
    for letter in range(1, background):
        current = subset_transporter(current, f1.level_set(letter), f2.level_set(letter), cap=cap)
        if current.is_empty:
            break
    return current


def stabilizes(pi: Perm, f: GroupString) -> bool:
    return f.act(pi) == f


def maps_to(pi: Perm, f1: GroupString, f2: GroupString) -> bool:
    return f1.act(pi) == f2
