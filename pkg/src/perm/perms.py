"""Permutations as numpy image arrays acting on the right: x^p = p[x], and pq means p then q."""

from typing import Iterable, Sequence

import numpy as np

from src.errors import PreconditionError

Perm = np.ndarray


def perm_dtype(degree: int):
    return np.int16 if degree < 2**15 else np.int32


def identity_perm(degree: int) -> Perm:
    return np.arange(degree, dtype=perm_dtype(degree))


def as_perm(images: Sequence[int] | np.ndarray, degree: int | None = None) -> Perm:
    perm = np.asarray(images)
    n = perm.size if degree is None else degree
    if perm.shape != (n,) or not np.array_equal(np.sort(perm), np.arange(n)):
        raise PreconditionError(f"Not a permutation of 0..{n - 1}: {perm.tolist()[:12]}")
    return perm.astype(perm_dtype(n))


def compose(p: Perm, q: Perm) -> Perm:
    """p then q."""
    return q[p]


def compose_all(perms: Iterable[Perm], degree: int) -> Perm:
    result = identity_perm(degree)
    for p in perms:
        result = p[result]
    return result


def inverse(p: Perm) -> Perm:
    inv = np.empty_like(p)
    inv[p] = np.arange(p.size, dtype=p.dtype)
    return inv


def is_identity(p: Perm) -> bool:
    return bool((p == np.arange(p.size)).all())


def first_moved(p: Perm) -> int:
    moved = np.flatnonzero(p != np.arange(p.size))
    return int(moved[0]) if moved.size else -1


def perm_key(p: Perm) -> bytes:
    return np.asarray(p, dtype=np.int32).tobytes()


def cycles(p: Perm) -> list[tuple[int, ...]]:
    seen = np.zeros(p.size, dtype=bool)
    result = []
    for start in range(p.size):
        if seen[start] or p[start] == start:
            continue
        cycle = []
        x = start
        while not seen[x]:
            seen[x] = True
            cycle.append(x)
            x = int(p[x])
        result.append(tuple(cycle))
    return result


def format_cycles(p: Perm) -> str:
    parts = cycles(p)
    if not parts:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in parts)


def format_images(p: Perm) -> str:
    return " ".join(str(int(x)) for x in p)


def from_cycles(cycle_list: Iterable[Sequence[int]], degree: int) -> Perm:
    perm = np.arange(degree)
    for cycle in cycle_list:
        for i, x in enumerate(cycle):
            perm[x] = cycle[(i + 1) % len(cycle)]
    return as_perm(perm, degree)
